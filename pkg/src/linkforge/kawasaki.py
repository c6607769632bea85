"""Single-vertex flat-foldability test used as a rigidity certificate.

A crease pattern around one vertex admits a nontrivial flat folding only if
some nonempty proper subset of its angles sums to exactly 180 degrees; when
no subset does, the star of triangles around the vertex is rigid.

Angles are given either as exact rational degrees, as exact direction
vectors with rational components (the angle is the argument of x + iy,
which is exactly testable without normalizing), or as plain floats.  Exact
inputs get exact decisions; float inputs within 1e-9 of a 180-degree subset
raise :class:`AmbiguousAngles` instead of guessing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import List, Sequence, Tuple, Union


class BadInput(Exception):
    pass


class AmbiguousAngles(Exception):
    pass


@dataclass(frozen=True)
class ExactAngle:
    """Angle known either as rational degrees or as an exact vector."""

    degrees: float
    deg_exact: Fraction | None = None
    vec: Tuple[Fraction, Fraction] | None = None


AngleInput = Union[int, float, Fraction, Tuple[object, object], ExactAngle]


def _norm_angle(a: AngleInput) -> ExactAngle:
    if isinstance(a, ExactAngle):
        return a
    if isinstance(a, (int, Fraction)):
        d = Fraction(a)
        return ExactAngle(float(d), deg_exact=d)
    if isinstance(a, tuple):
        x, y = Fraction(a[0]), Fraction(a[1])
        if x == 0 and y == 0:
            raise BadInput("zero direction vector")
        deg = math.degrees(math.atan2(float(y), float(x))) % 360.0
        if deg == 0.0:
            deg = 360.0
        return ExactAngle(deg, vec=(x, y))
    return ExactAngle(float(a))


def angle_between(
    pu: Tuple[object, object], pv: Tuple[object, object], pw: Tuple[object, object]
) -> ExactAngle:
    """Corner angle at pv from pu to pw as an exact-vector angle.

    Works whenever coordinates are rational: the angle is arg of the
    rational complex number (w - v) * conj(u - v).
    """
    ux, uy = Fraction(pu[0]) - Fraction(pv[0]), Fraction(pu[1]) - Fraction(pv[1])
    wx, wy = Fraction(pw[0]) - Fraction(pv[0]), Fraction(pw[1]) - Fraction(pv[1])
    # (wx + i wy) * (ux - i uy)
    x = wx * ux + wy * uy
    y = wy * ux - wx * uy
    deg = math.degrees(math.atan2(float(y), float(x))) % 360.0
    if deg == 0.0:
        deg = 360.0
    return ExactAngle(deg, vec=(x, y))


def _subset_sum_is_180(subset: Sequence[ExactAngle]) -> bool:
    total = sum(a.degrees for a in subset)
    # candidate only if the float total is near 180 (mod nothing: each angle
    # is positive and < 360, so a subset summing to 540+ is ruled out by the
    # float value unless it is within the guard band of 180 itself)
    if abs(total - 180.0) > 1e-6:
        return False
    if all(a.deg_exact is not None for a in subset):
        return sum((a.deg_exact for a in subset), Fraction(0)) == 180
    if all(a.deg_exact is not None or a.vec is not None for a in subset):
        # multiply exact vectors; add rational-degree parts that are
        # multiples of 90 by exact quarter-turn rotations
        x, y = Fraction(1), Fraction(0)
        deg_part = Fraction(0)
        for a in subset:
            if a.vec is not None:
                vx, vy = a.vec
                x, y = x * vx - y * vy, x * vy + y * vx
            else:
                deg_part += a.deg_exact
        q, r = divmod(deg_part, 90)
        if r != 0:
            raise AmbiguousAngles("mixed exact angles not at a 90-degree grid")
        for _ in range(int(q) % 4):
            x, y = -y, x
        return y == 0 and x < 0
    if abs(total - 180.0) < 1e-9:
        raise AmbiguousAngles(f"float subset sum {total} within guard band of 180")
    return False


def kawasaki_rigid(angles: Sequence[AngleInput]) -> bool:
    """True iff no nonempty proper subset of the angles sums to exactly 180.

    Raises BadInput unless the angles are positive and sum to 360 degrees.
    """
    items = [_norm_angle(a) for a in angles]
    if any(a.degrees <= 0 for a in items):
        raise BadInput("angles must be positive")
    total = sum(a.degrees for a in items)
    if abs(total - 360.0) > 1e-7:
        raise BadInput(f"angles sum to {total}, want 360")
    n = len(items)
    for k in range(1, n):
        for subset in combinations(range(n), k):
            if _subset_sum_is_180([items[i] for i in subset]):
                return False
    return True
