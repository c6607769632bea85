"""Numeric kernel: the two-angle position map, hook solving, small bounds.

These are the workhorses behind both gadget construction (solving elbow
positions, inverting the angular encoding) and the verification sweeps.
"""

from __future__ import annotations

import cmath
import math
from typing import Tuple

import numpy as np


class KernelError(Exception):
    pass


class NoConvergence(KernelError):
    pass


class OutOfRange(KernelError):
    pass


class NoSolution(KernelError):
    pass


def rect_eval(alpha: float, beta: float) -> Tuple[float, float]:
    """Position encoded by two angles: e^{i a} + i e^{i b} - (1 + i)."""
    return (math.cos(alpha) - math.sin(beta) - 1.0, math.sin(alpha) + math.cos(beta) - 1.0)


def rect_jacobian(alpha: float, beta: float) -> np.ndarray:
    return np.array(
        [[-math.sin(alpha), -math.cos(beta)], [math.cos(alpha), -math.sin(beta)]]
    )


def rect_invert(
    target: Tuple[float, float],
    theta: float = math.pi / 4,
    damping: float = 0.5,
    max_iter: int = 200,
    tol: float = 1e-13,
) -> Tuple[float, float]:
    """Unique (alpha, beta) in [-theta, theta]^2 with rect_eval = target.

    Damped Newton from (0, 0); the map is near-identity on the small boxes
    this is used with, so convergence is fast when the target lies in the
    guaranteed box [-theta/2, theta/2]^2.
    """
    a, b = 0.0, 0.0
    tx, ty = target
    for _ in range(max_iter):
        fx, fy = rect_eval(a, b)
        rx, ry = fx - tx, fy - ty
        if math.hypot(rx, ry) <= tol:
            return (a, b)
        J = rect_jacobian(a, b)
        det = J[0, 0] * J[1, 1] - J[0, 1] * J[1, 0]
        if abs(det) < 1e-15:
            raise NoConvergence("singular jacobian")
        da = (J[1, 1] * rx - J[0, 1] * ry) / det
        db = (-J[1, 0] * rx + J[0, 0] * ry) / det
        step = 1.0
        if max(abs(da), abs(db)) > 0.5:
            step = damping
        a -= step * da
        b -= step * db
        if abs(a) > 4 * theta or abs(b) > 4 * theta:
            raise NoConvergence("iterate left the search box")
    raise NoConvergence("newton did not reach tolerance")


def circle_intersections(c1, r1, c2, r2):
    """Both intersection points of two circles (complex centers)."""
    d = abs(c2 - c1)
    if d == 0:
        raise NoSolution("concentric circles")
    if d > r1 + r2 or d < abs(r1 - r2):
        raise NoSolution("circles do not intersect")
    a = (r1 * r1 - r2 * r2 + d * d) / (2 * d)
    h2 = r1 * r1 - a * a
    h = math.sqrt(max(0.0, h2))
    base = c1 + a * (c2 - c1) / d
    off = 1j * h * (c2 - c1) / d
    return (base + off, base - off)


def hook_solve(
    l1: float,
    l2: float,
    theta0: float,
    a_target: Tuple[float, float],
    c_target: Tuple[float, float],
    enforce_range: bool = True,
) -> Tuple[float, float]:
    """Unique elbow b with |a-b| = l1, |b-c| = l2 and angle(c, b, a) in (0, pi).

    The linkage starts at a0 = 0, b0 = l1, c0 = l1 + l2 e^{i theta0}; the
    stated displacement precondition |a'-a0|, |c'-c0| <= min(l1, l2)/2**5
    guarantees existence with |b-b0| <= 4h.
    """
    if not (math.pi / 3 - 1e-12 <= theta0 <= 2 * math.pi / 3 + 1e-12):
        raise OutOfRange(f"theta0={theta0} outside [pi/3, 2pi/3]")
    a = complex(*a_target)
    c = complex(*c_target)
    a0 = 0 + 0j
    c0 = l1 + l2 * cmath.exp(1j * theta0)
    h = max(abs(a - a0), abs(c - c0))
    if enforce_range and h > min(l1, l2) / 2 ** 5 + 1e-12:
        raise OutOfRange(f"displacement {h} exceeds min(l1,l2)/32")
    p1, p2 = circle_intersections(a, l1, c, l2)
    # angle(c, b, a) in (0, pi)  <=>  cross(b->c, b->a) > 0
    for b in (p1, p2):
        bc = c - b
        ba = a - b
        if bc.real * ba.imag - bc.imag * ba.real > 0:
            return (b.real, b.imag)
    raise NoSolution("no elbow with angle in (0, pi)")


def bar_chain_displacement_bound(total_length: float, theta: float) -> float:
    """A path of total length L whose edges each rotate by at most theta
    displaces its far endpoint by at most L*|theta|."""
    return total_length * abs(theta)


def arg_quotient_bound(A: complex, B: complex) -> float:
    """Bound on |arg((A+B)/A)|: asin(|B|/|A|), valid for |B| <= |A|/2."""
    t = abs(B) / abs(A)
    if t > 0.5:
        raise OutOfRange("|B| > |A|/2")
    return math.asin(t)
