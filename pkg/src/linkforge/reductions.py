"""Input-side reductions: orientation systems and ball restriction."""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence, Tuple

from .polynomials import Polynomial

Orientation = str  # "cw" | "ccw" | "collinear"
TripleSpec = Tuple[int, int, int, Orientation]


def reduce_point_configuration(triples: Sequence[TripleSpec], n_points: int) -> List[Polynomial]:
    """Polynomials (degree <= 2, coefficients in {-1, 0, 1}) whose common
    real zeros are exactly the point configurations with the given triple
    orientations.

    Point p_i contributes variables (2i, 2i+1); each cw/ccw triple gets two
    fresh variables a, b enforcing det = +-a**2 and a*b = 1.
    """
    n_aux = sum(1 for (_, _, _, o) in triples if o != "collinear")
    nv = 2 * n_points + 2 * n_aux
    out: List[Polynomial] = []
    aux = 2 * n_points

    def var(j: int) -> Polynomial:
        return Polynomial.variable(nv, j)

    for (i, j, k, orient) in triples:
        xi, yi = var(2 * i), var(2 * i + 1)
        xj, yj = var(2 * j), var(2 * j + 1)
        xk, yk = var(2 * k), var(2 * k + 1)
        det = (xi * yj) - (xi * yk) - (xj * yi) + (xj * yk) + (xk * yi) - (xk * yj)
        if orient == "collinear":
            out.append(det)
            continue
        a, b = var(aux), var(aux + 1)
        aux += 2
        sign = 1 if orient == "ccw" else -1
        out.append(det - (a * a).scale(sign))
        out.append((a * b) - Polynomial.constant(nv, 1))
    return out


def restrict_to_ball(F: Sequence[Polynomial], m: int) -> List[Polynomial]:
    """F together with x_1**2 + ... + x_m**2 - 1, promising zeros in [-1,1]^m."""
    g = Polynomial.zero(m)
    for j in range(m):
        xj = Polynomial.variable(m, j)
        g = g + (xj * xj)
    g = g - Polynomial.constant(m, 1)
    out = [p.copy() for p in F]
    for p in out:
        if p.num_vars != m:
            raise ValueError("all polynomials must live over m variables")
    out.append(g)
    return out
