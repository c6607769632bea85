from __future__ import annotations

import cmath
import math
import random

import numpy as np
import pytest

from linkforge.kernels import (
    OutOfRange,
    arg_quotient_bound,
    bar_chain_displacement_bound,
    hook_solve,
    rect_eval,
    rect_invert,
    rect_jacobian,
)


def rect_complex(a, b):
    return cmath.exp(1j * a) + 1j * cmath.exp(1j * b) - (1 + 1j)


def test_rect_eval_known_points():
    assert rect_eval(0.0, 0.0) == (0.0, 0.0)
    x, y = rect_eval(math.pi / 2, 0.0)
    assert (x, y) == pytest.approx((-1.0, 1.0))


def test_rect_eval_matches_complex_arithmetic():
    rng = random.Random(1)
    for _ in range(100):
        a, b = rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5)
        z = rect_complex(a, b)
        x, y = rect_eval(a, b)
        assert math.isclose(x, z.real, abs_tol=1e-15)
        assert math.isclose(y, z.imag, abs_tol=1e-15)


def test_rect_invert_roundtrip_on_box():
    theta = math.pi / 8
    for tx in np.linspace(-theta / 2, theta / 2, 11):
        for ty in np.linspace(-theta / 2, theta / 2, 11):
            a, b = rect_invert((tx, ty), theta)
            fx, fy = rect_eval(a, b)
            assert math.hypot(fx - tx, fy - ty) <= 1e-12
            assert abs(a) <= theta + 1e-9 and abs(b) <= theta + 1e-9


def test_rect_invert_unique_on_grid():
    # grid-scan oracle: no second root in [-theta, theta]^2 for a random target
    theta = math.pi / 8
    rng = random.Random(5)
    tx, ty = rng.uniform(-theta / 2, theta / 2), rng.uniform(-theta / 2, theta / 2)
    a0, b0 = rect_invert((tx, ty), theta)
    hits = []
    for a in np.linspace(-theta, theta, 33):
        for b in np.linspace(-theta, theta, 33):
            fx, fy = rect_eval(a, b)
            if math.hypot(fx - tx, fy - ty) < 5e-3:
                hits.append((a, b))
    assert hits, "grid scan should find the neighborhood of the root"
    for (a, b) in hits:
        assert math.hypot(a - a0, b - b0) < 0.05


def test_jacobian_determinant_is_cos_diff():
    rng = random.Random(9)
    for _ in range(100):
        a, b = rng.uniform(-0.7, 0.7), rng.uniform(-0.7, 0.7)
        J = rect_jacobian(a, b)
        det = J[0, 0] * J[1, 1] - J[0, 1] * J[1, 0]
        assert math.isclose(det, math.cos(a - b), rel_tol=1e-12)
        # finite-difference cross-check
        h = 1e-6
        fd = np.array([
            [(rect_eval(a + h, b)[0] - rect_eval(a - h, b)[0]) / (2 * h),
             (rect_eval(a, b + h)[0] - rect_eval(a, b - h)[0]) / (2 * h)],
            [(rect_eval(a + h, b)[1] - rect_eval(a - h, b)[1]) / (2 * h),
             (rect_eval(a, b + h)[1] - rect_eval(a, b - h)[1]) / (2 * h)],
        ])
        assert np.allclose(J, fd, atol=1e-6)


def test_hook_identity_case():
    b = hook_solve(1.0, 1.0, math.pi / 2, (0.0, 0.0), (1.0 + math.cos(math.pi / 2), math.sin(math.pi / 2)))
    assert b == pytest.approx((1.0, 0.0), abs=1e-12)


def test_hook_small_displacement_bound():
    c0 = (1.0, 1.0)
    b = hook_solve(1.0, 1.0, math.pi / 2, (0.0, 0.0), (c0[0] + 0.01, c0[1]))
    assert math.hypot(b[0] - 1.0, b[1]) <= 0.015


def test_hook_rejects_large_displacement():
    with pytest.raises(OutOfRange):
        hook_solve(1.0, 1.0, math.pi / 2, (0.0, 0.0), (1.2, 1.0))


def test_hook_random_bounds():
    rng = random.Random(42)
    for _ in range(2000):
        l1 = rng.uniform(0.5, 3.0)
        l2 = rng.uniform(0.5, 3.0)
        th = rng.uniform(math.pi / 3, 2 * math.pi / 3)
        h = min(l1, l2) / 2 ** 5
        b0 = (l1, 0.0)
        c0 = (l1 + l2 * math.cos(th), l2 * math.sin(th))
        da = rng.uniform(0, h)
        dc = rng.uniform(0, h)
        aa = rng.uniform(0, 2 * math.pi)
        ac = rng.uniform(0, 2 * math.pi)
        a1 = (da * math.cos(aa), da * math.sin(aa))
        c1 = (c0[0] + dc * math.cos(ac), c0[1] + dc * math.sin(ac))
        bx, by = hook_solve(l1, l2, th, a1, c1)
        hh = max(da, dc)
        assert math.hypot(bx - b0[0], by - b0[1]) <= 4 * hh + 1e-12
        # circle residuals
        assert abs(math.hypot(bx - a1[0], by - a1[1]) - l1) <= 1e-12
        assert abs(math.hypot(bx - c1[0], by - c1[1]) - l2) <= 1e-12
        # bar rotation bounds
        rot1 = abs(math.atan2(by - a1[1], bx - a1[0]))
        assert rot1 <= 4 * hh / l1 + 1e-9
        rot2 = abs(math.atan2(c1[1] - by, c1[0] - bx) - th)
        assert rot2 <= 4 * hh / l2 + 1e-9


def test_bar_chain_bound_and_monte_carlo():
    assert bar_chain_displacement_bound(1.0, 0.0) == 0.0
    assert bar_chain_displacement_bound(24.0, 1e-3) == pytest.approx(0.024)
    rng = random.Random(0)
    for _ in range(1000):
        n = rng.randint(1, 6)
        lens = [rng.uniform(0.1, 2.0) for _ in range(n)]
        theta = rng.uniform(0, 0.3)
        # chain along +x, each edge rotated by a random angle within +-theta
        p = np.zeros(2)
        q = np.zeros(2)
        for L in lens:
            p = p + np.array([L, 0.0])
            ang = rng.uniform(-theta, theta)
            q = q + L * np.array([math.cos(ang), math.sin(ang)])
        disp = float(np.hypot(*(p - q)))
        assert disp <= bar_chain_displacement_bound(sum(lens), theta) + 1e-12


def test_sin_and_arcsin_inequalities():
    for i in range(1, 10001):
        t = 0.5 * i / 10001
        assert math.sin(t) > 0.9 * t
        assert math.asin(t) < 1.1 * t


def test_arg_quotient_bound():
    assert arg_quotient_bound(1.0, 0.0) == 0.0
    # usage shape: |theta| <= 1.1 * |B| / |A|
    assert arg_quotient_bound(4.0, 2 * 0.3) <= 1.1 * 2 * 0.3 / 4
    rng = random.Random(13)
    for _ in range(100000):
        A = cmath.rect(rng.uniform(0.5, 2.0), rng.uniform(0, 2 * math.pi))
        B = cmath.rect(rng.uniform(0, 0.5) * abs(A), rng.uniform(0, 2 * math.pi))
        bound = arg_quotient_bound(A, B)
        actual = abs(cmath.phase((A + B) / A))
        assert actual <= bound + 1e-12
