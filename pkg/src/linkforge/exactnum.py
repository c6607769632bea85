"""Exact coordinate arithmetic: rationals and the field Q[sqrt(3), sqrt(11)].

All construction-side geometry in this package is carried out either over
plain rationals (``fractions.Fraction``) or over :class:`QuadCoord`, numbers
of the form ``a + b*sqrt(3) + c*sqrt(11) + d*sqrt(33)`` with rational
``a, b, c, d``.  That field is closed under multiplication (sqrt(3)*sqrt(11)
= sqrt(33), sqrt(3)*sqrt(33) = 3*sqrt(11), ...) and has decidable equality,
which is what the exact validators rely on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Rat = Fraction

RatLike = Union[int, Fraction]


def rat(x: RatLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


_SQRT3 = math.sqrt(3.0)
_SQRT11 = math.sqrt(11.0)
_SQRT33 = math.sqrt(33.0)


@dataclass(frozen=True)
class QuadCoord:
    """a + b*sqrt(3) + c*sqrt(11) + d*sqrt(33), all components rational."""

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    @staticmethod
    def of(a: RatLike = 0, b: RatLike = 0, c: RatLike = 0, d: RatLike = 0) -> "QuadCoord":
        return QuadCoord(rat(a), rat(b), rat(c), rat(d))

    @staticmethod
    def lift(x: "QuadLike") -> "QuadCoord":
        if isinstance(x, QuadCoord):
            return x
        return QuadCoord(rat(x), Fraction(0), Fraction(0), Fraction(0))

    def __add__(self, other: "QuadLike") -> "QuadCoord":
        o = QuadCoord.lift(other)
        return QuadCoord(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)

    __radd__ = __add__

    def __neg__(self) -> "QuadCoord":
        return QuadCoord(-self.a, -self.b, -self.c, -self.d)

    def __sub__(self, other: "QuadLike") -> "QuadCoord":
        return self + (-QuadCoord.lift(other))

    def __rsub__(self, other: "QuadLike") -> "QuadCoord":
        return QuadCoord.lift(other) + (-self)

    def __mul__(self, other: "QuadLike") -> "QuadCoord":
        o = QuadCoord.lift(other)
        a1, b1, c1, d1 = self.a, self.b, self.c, self.d
        a2, b2, c2, d2 = o.a, o.b, o.c, o.d
        # basis products: s3*s3=3, s11*s11=11, s33*s33=33,
        # s3*s11=s33, s3*s33=3*s11, s11*s33=11*s3
        a = a1 * a2 + 3 * b1 * b2 + 11 * c1 * c2 + 33 * d1 * d2
        b = a1 * b2 + b1 * a2 + 11 * (c1 * d2 + d1 * c2)
        c = a1 * c2 + c1 * a2 + 3 * (b1 * d2 + d1 * b2)
        d = a1 * d2 + d1 * a2 + b1 * c2 + c1 * b2
        return QuadCoord(a, b, c, d)

    __rmul__ = __mul__

    def is_rational(self) -> bool:
        return self.b == 0 and self.c == 0 and self.d == 0

    def __float__(self) -> float:
        return (
            float(self.a) + float(self.b) * _SQRT3 + float(self.c) * _SQRT11 + float(self.d) * _SQRT33
        )

    def __repr__(self) -> str:
        return f"QuadCoord({self.a}, {self.b}, {self.c}, {self.d})"


QuadLike = Union[int, Fraction, QuadCoord]

SQRT3 = QuadCoord.of(0, 1, 0, 0)
SQRT11 = QuadCoord.of(0, 0, 1, 0)
SQRT33 = QuadCoord.of(0, 0, 0, 1)


def exact_to_float(x) -> float:
    if isinstance(x, QuadCoord):
        return float(x)
    if isinstance(x, (Fraction, int)):
        return float(x)
    return float(x)


def exact_eq(x, y) -> bool:
    """Exact equality across Fraction/QuadCoord/int operands."""
    if isinstance(x, QuadCoord) or isinstance(y, QuadCoord):
        return QuadCoord.lift(x) == QuadCoord.lift(y)
    return rat(x) == rat(y)


def exact_is_zero(x) -> bool:
    return exact_eq(x, 0)
