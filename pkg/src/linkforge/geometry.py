"""Planar predicates shared by construction and verification.

Scalar predicates work on exact coordinates (Fraction / QuadCoord) and make
exact sign decisions; the ``*_arr`` helpers are vectorized float versions
used when sweeping large configurations.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence, Tuple

import numpy as np

from .exactnum import exact_to_float

Point = Tuple[object, object]


def sub(p: Point, q: Point):
    return (p[0] - q[0], p[1] - q[1])


def cross(o: Point, a: Point, b: Point):
    """Signed area*2 of triangle (o, a, b); exact if inputs are exact."""
    ax, ay = a[0] - o[0], a[1] - o[1]
    bx, by = b[0] - o[0], b[1] - o[1]
    return ax * by - ay * bx


def dot(o: Point, a: Point, b: Point):
    ax, ay = a[0] - o[0], a[1] - o[1]
    bx, by = b[0] - o[0], b[1] - o[1]
    return ax * bx + ay * by


def sign_of(x) -> int:
    f = exact_to_float(x)
    if f > 0:
        return 1
    if f < 0:
        return -1
    # near-zero floats of exact values are exact zeros; for true floats
    # equality with 0.0 already happened
    return 0


def orient(p: Point, q: Point, r: Point) -> int:
    return sign_of(cross(p, q, r))


def _on_segment(p: Point, q: Point, r: Point) -> bool:
    """r collinear with pq: is r within the closed box of pq?"""
    rx, ry = exact_to_float(r[0]), exact_to_float(r[1])
    px, py = exact_to_float(p[0]), exact_to_float(p[1])
    qx, qy = exact_to_float(q[0]), exact_to_float(q[1])
    return min(px, qx) <= rx <= max(px, qx) and min(py, qy) <= ry <= max(py, qy)


def segments_cross(s1, s2, shared: Iterable[int] = ()) -> bool:
    """True if the two closed segments intersect illegally.

    ``shared`` lists indices (0 or 1 per endpoint of s1) of endpoints of s1
    that are identified with an endpoint of s2 (incident edges).  Incident
    edges are allowed to meet exactly at the shared point; any other contact
    is a crossing.  Disjoint edges may not intersect at all.
    """
    p1, p2 = s1
    q1, q2 = s2
    shared = tuple(shared)
    o1 = orient(p1, p2, q1)
    o2 = orient(p1, p2, q2)
    o3 = orient(q1, q2, p1)
    o4 = orient(q1, q2, p2)

    if not shared:
        if o1 != o2 and o3 != o4:
            return True
        if o1 == 0 and _on_segment(p1, p2, q1):
            return True
        if o2 == 0 and _on_segment(p1, p2, q2):
            return True
        if o3 == 0 and _on_segment(q1, q2, p1):
            return True
        if o4 == 0 and _on_segment(q1, q2, p2):
            return True
        return False

    # incident edges: identify the shared vertex, then they may touch only
    # there.  Collinear overlap or a crossing elsewhere is illegal.
    sp = p1 if 0 in shared else p2
    other1 = p2 if 0 in shared else p1
    # endpoint of s2 that is not the shared point
    if q1 == sp:
        other2 = q2
    elif q2 == sp:
        other2 = q1
    else:
        # caller said incident but coordinates differ: treat as disjoint test
        return segments_cross(s1, s2, ())
    o_a = orient(sp, other1, other2)
    if o_a != 0:
        return False
    # collinear rays from the shared point: crossing iff they point the
    # same way (overlap), legal iff opposite.
    d = dot(sp, other1, other2)
    return sign_of(d) > 0


def angle_ccw(u: Point, v: Point, w: Point) -> float:
    """CCW angle at v from ray v->u to ray v->w, in (0, 2*pi]."""
    ux = exact_to_float(u[0]) - exact_to_float(v[0])
    uy = exact_to_float(u[1]) - exact_to_float(v[1])
    wx = exact_to_float(w[0]) - exact_to_float(v[0])
    wy = exact_to_float(w[1]) - exact_to_float(v[1])
    a = math.atan2(wy, wx) - math.atan2(uy, ux)
    while a <= 0.0:
        a += 2.0 * math.pi
    while a > 2.0 * math.pi:
        a -= 2.0 * math.pi
    return a


def exact_corner_matches(u: Point, v: Point, w: Point, base_deg: int) -> bool:
    """Exact test that the CCW corner angle at v from u to w equals base_deg.

    Only the base angles 90/180/270/360 used by extended linkages are
    supported; the test reduces to sign conditions on exact dot/cross.
    """
    if base_deg == 360:
        return True
    c = cross(v, u, w)
    d = dot(v, u, w)
    cs, ds = sign_of(c), sign_of(d)
    if base_deg == 90:
        return ds == 0 and cs > 0
    if base_deg == 180:
        return cs == 0 and ds < 0
    if base_deg == 270:
        return ds == 0 and cs < 0
    raise ValueError(f"unsupported base angle {base_deg}")


# ------------------------------------------------------------------
# vectorized float helpers
# ------------------------------------------------------------------

def point_segment_dist_arr(pts: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Distances from each row of pts to segment ab."""
    ab = b - a
    denom = float(ab @ ab)
    if denom == 0.0:
        return np.hypot(pts[:, 0] - a[0], pts[:, 1] - a[1])
    t = ((pts - a) @ ab) / denom
    t = np.clip(t, 0.0, 1.0)
    proj = a + t[:, None] * ab
    d = pts - proj
    return np.hypot(d[:, 0], d[:, 1])


def min_feature_size_arr(
    coords: np.ndarray,
    edges: Sequence[Tuple[int, int]],
) -> float:
    """Minimum distance from any vertex to a non-incident edge (float mode)."""
    best = math.inf
    n = coords.shape[0]
    idx = np.arange(n)
    for (i, j) in edges:
        mask = (idx != i) & (idx != j)
        if not mask.any():
            continue
        d = point_segment_dist_arr(coords[mask], coords[i], coords[j])
        m = float(d.min())
        if m < best:
            best = m
    return best


def any_crossing_arr(
    coords: np.ndarray,
    edges: Sequence[Tuple[int, int]],
    eps: float = 0.0,
) -> bool:
    """Crossing test over all edge pairs with bounding-box prefilter."""
    E = len(edges)
    ea = np.array([e[0] for e in edges])
    eb = np.array([e[1] for e in edges])
    P = coords[ea]
    Q = coords[eb]
    lo = np.minimum(P, Q) - eps
    hi = np.maximum(P, Q) + eps
    for k in range(E):
        # candidate pairs by box overlap
        cand = np.nonzero(
            (lo[k + 1 :, 0] <= hi[k, 0])
            & (hi[k + 1 :, 0] >= lo[k, 0])
            & (lo[k + 1 :, 1] <= hi[k, 1])
            & (hi[k + 1 :, 1] >= lo[k, 1])
        )[0]
        for off in cand:
            m = k + 1 + off
            i1, j1 = edges[k]
            i2, j2 = edges[m]
            shared_idx = []
            if i1 in (i2, j2):
                shared_idx.append(0)
            if j1 in (i2, j2):
                shared_idx.append(1)
            if len(shared_idx) == 2:
                continue  # parallel edge pair (same endpoints)
            s1 = (tuple(coords[i1]), tuple(coords[j1]))
            s2 = (tuple(coords[i2]), tuple(coords[j2]))
            if segments_cross(s1, s2, shared_idx):
                return True
    return False


def rot90(p: Point) -> Point:
    return (-p[1], p[0])


def rot_deg_exact(p: Point, quarter_turns: int) -> Point:
    """Rotate exact point by 90 deg * quarter_turns about the origin."""
    q = (p[0], p[1])
    for _ in range(quarter_turns % 4):
        q = (-q[1], q[0])
    return q
