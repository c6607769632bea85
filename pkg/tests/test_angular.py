from __future__ import annotations

import cmath
import math
import random
from fractions import Fraction

import pytest

from linkforge.angular import count_bound, eval_angular, expand_angular, sum_bound
from linkforge.kernels import rect_eval
from linkforge.polynomials import Polynomial

F = Fraction


def direct_eval(f: Polynomial, r: int, angles) -> float:
    """Independent oracle: evaluate f at x_j = 2r*Rect(alpha_j, beta_j)."""
    m = f.num_vars // 2
    xy = []
    for j in range(m):
        a, b = angles[2 * j], angles[2 * j + 1]
        x, y = rect_eval(a, b)
        xy.extend([2 * r * x, 2 * r * y])
    return f.eval(xy)


def random_poly(rng, m, d, M):
    nv = 2 * m
    p = Polynomial.zero(nv)
    for _ in range(rng.randint(1, 6)):
        mono = [0] * nv
        for _ in range(rng.randint(0, d)):
            mono[rng.randrange(nv)] += 1
        if sum(mono) > d:
            continue
        p.add_term(tuple(mono), rng.randint(-M, M))
    p.clean()
    return p


def test_zero_polynomial():
    f = Polynomial.zero(2)
    form = expand_angular(f, 3)
    assert form.constant == 0 and form.coeffs == {}


def test_x1_expansion_structure():
    # f = x1 over one point (2 variables): four coefficients, all equal r
    f = Polynomial.variable(2, 0)
    form = expand_angular(f, 5)
    assert form.constant == 0
    assert form.coeffs == {
        (0, (1, 0)): F(5),
        (0, (-1, 0)): F(5),
        (1, (0, 1)): F(5),
        (3, (0, -1)): F(5),
    }


def test_x1_eval_symbolic_identity():
    # angles (t, 0): r(e^{it} + e^{-it} - 2) = 2r(cos t - 1)
    f = Polynomial.variable(2, 0)
    form = expand_angular(f, 4)
    for t in (0.3, -0.2, 0.01):
        v = eval_angular(form, (t, 0.0))
        assert v.imag == pytest.approx(0.0, abs=1e-12)
        assert v.real == pytest.approx(2 * 4 * (math.cos(t) - 1), abs=1e-12)


def test_x1_squared_against_direct_substitution():
    f = Polynomial.variable(2, 0) * Polynomial.variable(2, 0)
    form = expand_angular(f, 3)
    rng = random.Random(8)
    for _ in range(50):
        a = rng.uniform(-0.01, 0.01)
        b = rng.uniform(-0.01, 0.01)
        got = eval_angular(form, (a, b))
        want = direct_eval(f, 3, (a, b))
        assert abs(got.real - want) <= 1e-10
        assert abs(got.imag) <= 1e-10


def test_oracle_equivalence_and_bounds_random():
    rng = random.Random(123)
    checked = 0
    for _ in range(100):
        m = rng.randint(1, 2)
        d = rng.randint(1, 4)
        M = rng.randint(1, 2)
        f = random_poly(rng, m, d, M)
        r = rng.randint(1, 5)
        form = expand_angular(f, r, declared_degree=d)
        # lemma bounds hold exactly
        assert form.nonzero_count() <= count_bound(m, d)
        assert form.coeff_sum() <= sum_bound(m, d, max(1, int(f.max_coeff())), r)
        # integer coefficients stay integers
        assert all(c.denominator == 1 for c in form.coeffs.values())
        # membership in Coeffs(2m, d): 1-norm <= d, no zero frequency
        for (u, I) in form.coeffs:
            assert sum(abs(k) for k in I) <= d
            assert any(I)
            assert 0 <= u <= 3
        # at most one of d_{u,I}, d_{u+2,I}
        for (u, I) in form.coeffs:
            assert ((u + 2) % 4, I) not in form.coeffs
        for _ in range(50):
            angles = [rng.uniform(-0.02, 0.02) for _ in range(2 * m)]
            got = eval_angular(form, angles)
            want = direct_eval(f, r, angles)
            scaled_want = want * float(form.prescale)
            denom = max(1.0, abs(scaled_want))
            assert abs(got.real - scaled_want) / denom <= 1e-9
            assert abs(got.imag) / denom <= 1e-9
            checked += 1
    assert checked >= 1000


def test_eval_at_zero_gives_constant():
    f = Polynomial(2, {(0, 0): F(7), (1, 0): F(2), (0, 2): F(-1)})
    form = expand_angular(f, 2)
    assert form.constant == 7
    v = eval_angular(form, (0.0, 0.0))
    assert v == pytest.approx(7.0)


def test_autoscale_records_power_of_two():
    f = Polynomial(2, {(1, 0): F(1, 5)})
    form = expand_angular(f, 1, autoscale=True)
    assert form.prescale == 8  # 1/5 * 8 = 8/5 >= 1
    assert min(form.coeffs.values()) >= 1
