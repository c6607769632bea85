"""Angular expansion: rewriting polynomials over per-point angle pairs.

Substituting x_j = r(e^{i a_j} + e^{-i a_j} + i e^{i b_j} - i e^{-i b_j} - 2)
and the matching expression for y_j turns a polynomial f into

    f = f(0) + sum_{u, I} i^u * d_{u, I} * (e^{i (I . ab)} - 1)

with nonnegative coefficients d_{u, I} indexed by integer frequency vectors
I of 1-norm at most deg(f).  The expansion is exact over the rationals;
nonnegativity and the one-of-(u, u+2) cancellation rule are enforced after
collection.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Sequence, Tuple

from .polynomials import Polynomial

Freq = Tuple[int, ...]


class DegreeOverflow(Exception):
    pass


@dataclass
class AngularForm:
    num_angles: int                      # 2m
    constant: Fraction                   # f(0)
    coeffs: Dict[Tuple[int, Freq], Fraction]  # (u, I) -> d >= 0
    r: int
    prescale: Fraction = Fraction(1)     # factor applied to f before expansion

    def nonzero_count(self) -> int:
        return len(self.coeffs)

    def coeff_sum(self) -> Fraction:
        return sum(self.coeffs.values(), Fraction(0))

    def frequencies(self) -> List[Freq]:
        seen: Dict[Freq, None] = {}
        for (_, I) in self.coeffs:
            seen.setdefault(I)
        return list(seen)

    def eval(self, angles: Sequence[float]) -> complex:
        if len(angles) != self.num_angles:
            raise ValueError("angle vector has wrong length")
        total = complex(float(self.constant), 0.0)
        for (u, I), d in self.coeffs.items():
            phase = sum(k * a for k, a in zip(I, angles))
            total += (1j ** u) * float(d) * (cmath.exp(1j * phase) - 1.0)
        return total


# Gaussian-rational sparse series over the frequency lattice: I -> (re, im)
_GaussSeries = Dict[Freq, Tuple[Fraction, Fraction]]


def _gadd(s: _GaussSeries, I: Freq, re: Fraction, im: Fraction) -> None:
    a, b = s.get(I, (Fraction(0), Fraction(0)))
    a, b = a + re, b + im
    if a == 0 and b == 0:
        s.pop(I, None)
    else:
        s[I] = (a, b)


def _gmul(s1: _GaussSeries, s2: _GaussSeries) -> _GaussSeries:
    out: _GaussSeries = {}
    for I1, (a1, b1) in s1.items():
        for I2, (a2, b2) in s2.items():
            I = tuple(x + y for x, y in zip(I1, I2))
            _gadd(out, I, a1 * a2 - b1 * b2, a1 * b2 + b1 * a2)
    return out


def _unit(nv: int, j: int, sign: int) -> Freq:
    return tuple(sign if i == j else 0 for i in range(nv))


def _variable_series(num_angles: int, var_index: int, r: Fraction) -> _GaussSeries:
    """Series for x_j (even var_index) or y_j (odd) in terms of e^{i I.ab}."""
    j = var_index // 2
    ia = 2 * j      # alpha_j position in the frequency vector
    ib = 2 * j + 1  # beta_j position
    z: _GaussSeries = {}
    zero = tuple([0] * num_angles)
    if var_index % 2 == 0:
        # x_j = r(e^{ia} + e^{-ia} + i e^{ib} - i e^{-ib} - 2)
        _gadd(z, _unit(num_angles, ia, +1), r, Fraction(0))
        _gadd(z, _unit(num_angles, ia, -1), r, Fraction(0))
        _gadd(z, _unit(num_angles, ib, +1), Fraction(0), r)
        _gadd(z, _unit(num_angles, ib, -1), Fraction(0), -r)
        _gadd(z, zero, -2 * r, Fraction(0))
    else:
        # y_j = r(-i e^{ia} + i e^{-ia} + e^{ib} + e^{-ib} - 2)
        _gadd(z, _unit(num_angles, ia, +1), Fraction(0), -r)
        _gadd(z, _unit(num_angles, ia, -1), Fraction(0), r)
        _gadd(z, _unit(num_angles, ib, +1), r, Fraction(0))
        _gadd(z, _unit(num_angles, ib, -1), r, Fraction(0))
        _gadd(z, zero, -2 * r, Fraction(0))
    return z


def expand_angular(
    f: Polynomial,
    r: int,
    declared_degree: int | None = None,
    autoscale: bool = False,
) -> AngularForm:
    """Expand f over the angle variables with radius parameter r.

    With ``autoscale`` (toy inputs with fractional coefficients), f is
    multiplied by the smallest power of two making every nonzero d at
    least 1; the factor is recorded in the result's ``prescale``.
    """
    nv = f.num_vars
    d_max = declared_degree if declared_degree is not None else f.total_degree()
    if f.total_degree() > d_max:
        raise DegreeOverflow(f"degree {f.total_degree()} > declared {d_max}")
    rr = Fraction(r)

    series: _GaussSeries = {}
    zero = tuple([0] * nv)
    for mono, coeff in f.terms.items():
        if sum(mono) > d_max:
            raise DegreeOverflow(str(mono))
        term: _GaussSeries = {zero: (coeff, Fraction(0))}
        for var_index, e in enumerate(mono):
            vs = _variable_series(nv, var_index, rr)
            for _ in range(e):
                term = _gmul(term, vs)
        for I, (a, b) in term.items():
            _gadd(series, I, a, b)

    form = _collect(series, f, nv, r)
    if autoscale and form.coeffs:
        smallest = min(form.coeffs.values())
        scale = Fraction(1)
        while smallest * scale < 1:
            scale *= 2
        if scale != 1:
            form = _collect(
                {I: (a * scale, b * scale) for I, (a, b) in series.items()},
                f.scale(scale),
                nv,
                r,
            )
            form.prescale = scale
    return form


def _collect(series: _GaussSeries, f: Polynomial, nv: int, r: int) -> AngularForm:
    coeffs: Dict[Tuple[int, Freq], Fraction] = {}
    zero = tuple([0] * nv)
    for I, (a, b) in series.items():
        if I == zero:
            continue  # (e^{i0} - 1) terms vanish identically
        if a > 0:
            coeffs[(0, I)] = a
        elif a < 0:
            coeffs[(2, I)] = -a
        if b > 0:
            coeffs[(1, I)] = b
        elif b < 0:
            coeffs[(3, I)] = -b
    return AngularForm(nv, f.constant_term(), coeffs, r)


def eval_angular(form: AngularForm, angles: Sequence[float]) -> complex:
    return form.eval(angles)


def count_bound(m: int, d: int) -> int:
    return 2 * (2 * m) ** d * (2 * d + 1) ** d


def sum_bound(m: int, d: int, M, r: int) -> Fraction:
    return Fraction(6 ** d) * Fraction(r) ** d * Fraction(M) * math.comb(2 * m + d, d)
