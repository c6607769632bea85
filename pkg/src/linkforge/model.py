"""Linkage data model: graphs with pins, constraints and configurations.

Coordinates come in three modes: exact rationals, the quadratic field
Q[sqrt3, sqrt11], and float64.  Construction code always emits exact
coordinates; kinematic checks run in float with explicit tolerances.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from .exactnum import QuadCoord, exact_eq, exact_to_float, rat
from .geometry import (
    angle_ccw,
    any_crossing_arr,
    cross,
    dot,
    exact_corner_matches,
    min_feature_size_arr,
    segments_cross,
)

Corner = Tuple[str, str, str]
EdgeKey = Tuple[str, str]


class LinkageError(Exception):
    pass


class MissingVertex(LinkageError):
    pass


class DegenerateEdge(LinkageError):
    pass


class UnknownCorner(LinkageError):
    pass


def edge_key(u: str, v: str) -> EdgeKey:
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True)
class Edge:
    u: str
    v: str
    length: Fraction

    @property
    def key(self) -> EdgeKey:
        return edge_key(self.u, self.v)


@dataclass
class CombinatorialEmbedding:
    """Per-vertex CCW cyclic order of neighbor vertices."""

    order: Dict[str, List[str]]

    def corners_at(self, v: str) -> List[Corner]:
        nbrs = self.order[v]
        if len(nbrs) == 1:
            return [(nbrs[0], v, nbrs[0])]
        out = []
        for i, u in enumerate(nbrs):
            w = nbrs[(i + 1) % len(nbrs)]
            out.append((u, v, w))
        return out

    def corners(self) -> List[Corner]:
        out: List[Corner] = []
        for v in self.order:
            out.extend(self.corners_at(v))
        return out


@dataclass
class RigidCon:
    """Subgraph forced congruent to a reference configuration."""

    edges: Tuple[EdgeKey, ...]
    reference: Dict[str, Tuple[object, object]]

    def vertices(self) -> List[str]:
        seen: Dict[str, None] = {}
        for (u, v) in self.edges:
            seen.setdefault(u)
            seen.setdefault(v)
        return list(seen)


@dataclass
class AngleCon:
    """Base angle + tolerance class per corner of the embedding.

    ``base`` maps corners to degrees in {90, 180, 270, 360}; ``tclass``
    maps corners to one of "frozen", "delta", "eps".  The numeric values
    of the two tolerance classes are global to the constraint.
    """

    base: Dict[Corner, int]
    tclass: Dict[Corner, str]
    eps: float
    delta: float

    def tol(self, corner: Corner) -> float:
        c = self.tclass.get(corner, "frozen")
        if c == "frozen":
            return 0.0
        if c == "delta":
            return self.delta
        if c == "eps":
            return self.eps
        raise ValueError(f"bad tolerance class {c}")


@dataclass
class SliceCon:
    vertices: Tuple[str, ...]


@dataclass
class NXCon:
    pass


Constraint = object  # RigidCon | AngleCon | SliceCon | NXCon


@dataclass
class Linkage:
    vertices: List[str]
    edges: List[Edge]
    pins: Dict[str, Tuple[object, object]] = field(default_factory=dict)
    constraints: List[Constraint] = field(default_factory=list)
    embedding: Optional[CombinatorialEmbedding] = None

    def __post_init__(self) -> None:
        vs = set(self.vertices)
        for e in self.edges:
            if e.u == e.v:
                raise LinkageError(f"self loop at {e.u}")
            if e.u not in vs or e.v not in vs:
                raise MissingVertex(f"edge {e.u}-{e.v} uses unknown vertex")
            if e.length <= 0:
                raise LinkageError(f"nonpositive length on {e.u}-{e.v}")
        for w in self.pins:
            if w not in vs:
                raise MissingVertex(f"pin at unknown vertex {w}")

    # -- convenience ------------------------------------------------
    def edge_map(self) -> Dict[EdgeKey, Fraction]:
        return {e.key: e.length for e in self.edges}

    def neighbors(self) -> Dict[str, List[str]]:
        nbr: Dict[str, List[str]] = {v: [] for v in self.vertices}
        for e in self.edges:
            nbr[e.u].append(e.v)
            nbr[e.v].append(e.u)
        return nbr

    def angle_constraint(self) -> Optional[AngleCon]:
        for c in self.constraints:
            if isinstance(c, AngleCon):
                return c
        return None

    def index(self) -> Dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}


@dataclass
class Configuration:
    coords: Dict[str, Tuple[object, object]]
    mode: str = "exact"  # "exact" | "quad" | "float"

    def as_array(self, order: Sequence[str]) -> np.ndarray:
        return np.array(
            [[exact_to_float(self.coords[v][0]), exact_to_float(self.coords[v][1])] for v in order],
            dtype=float,
        )

    def to_float(self, order: Optional[Sequence[str]] = None) -> "Configuration":
        keys = order if order is not None else list(self.coords)
        return Configuration(
            {v: (exact_to_float(self.coords[v][0]), exact_to_float(self.coords[v][1])) for v in keys},
            mode="float",
        )


# ----------------------------------------------------------------------
# validation
# ----------------------------------------------------------------------

@dataclass
class ClassReport:
    ok: bool = True
    worst: float = 0.0
    detail: str = ""

    def merge(self, ok: bool, violation: float, detail: str = "") -> None:
        if violation > self.worst:
            self.worst = violation
            if detail:
                self.detail = detail
        if not ok:
            self.ok = False
            if detail and not self.detail:
                self.detail = detail


@dataclass
class ValidationReport:
    classes: Dict[str, ClassReport]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.classes.values())

    def summary(self) -> str:
        rows = []
        for name, r in sorted(self.classes.items()):
            rows.append(f"{name:12s} {'pass' if r.ok else 'FAIL':4s} worst={r.worst:.3e} {r.detail}")
        return "\n".join(rows)


def _dist2_exact(p, q):
    dx = p[0] - q[0]
    dy = p[1] - q[1]
    return dx * dx + dy * dy


def _exact_mode(C: Configuration) -> bool:
    return C.mode in ("exact", "quad")


def validate_configuration(L: Linkage, C: Configuration, tol: float = 0.0) -> ValidationReport:
    """Check edge lengths, pins, angle windows, sliceforms, rigid subgraphs
    and the noncrossing constraint, reporting the worst violation per class.
    """
    for v in L.vertices:
        if v not in C.coords:
            raise MissingVertex(v)

    exact = _exact_mode(C) and tol == 0.0
    rep = ValidationReport({
        "edges": ClassReport(),
        "pins": ClassReport(),
        "angles": ClassReport(),
        "sliceform": ClassReport(),
        "rigid": ClassReport(),
        "noncrossing": ClassReport(),
    })

    # edge lengths
    for e in L.edges:
        p, q = C.coords[e.u], C.coords[e.v]
        if exact:
            d2 = _dist2_exact(p, q)
            if exact_eq(d2, 0) and e.length > 0:
                raise DegenerateEdge(f"{e.u}-{e.v}")
            ok = exact_eq(d2, e.length * e.length)
            rep.classes["edges"].merge(ok, 0.0 if ok else math.inf, f"{e.u}-{e.v}")
        else:
            d = math.hypot(
                exact_to_float(p[0]) - exact_to_float(q[0]),
                exact_to_float(p[1]) - exact_to_float(q[1]),
            )
            if d == 0.0 and e.length > 0:
                raise DegenerateEdge(f"{e.u}-{e.v}")
            resid = abs(d - float(e.length))
            rep.classes["edges"].merge(resid <= tol, resid, f"{e.u}-{e.v}")

    # pins
    for w, p in L.pins.items():
        q = C.coords[w]
        if exact:
            ok = exact_eq(p[0], q[0]) and exact_eq(p[1], q[1])
            rep.classes["pins"].merge(ok, 0.0 if ok else math.inf, w)
        else:
            resid = math.hypot(
                exact_to_float(p[0]) - exact_to_float(q[0]),
                exact_to_float(p[1]) - exact_to_float(q[1]),
            )
            rep.classes["pins"].merge(resid <= tol, resid, w)

    for con in L.constraints:
        if isinstance(con, AngleCon):
            _check_angles(L, C, con, tol, exact, rep.classes["angles"])
        elif isinstance(con, SliceCon):
            _check_sliceform(L, C, con, tol, exact, rep.classes["sliceform"])
        elif isinstance(con, RigidCon):
            _check_rigid(C, con, tol, exact, rep.classes["rigid"])
        elif isinstance(con, NXCon):
            fs = min_feature_size(L, C)
            rep.classes["noncrossing"].merge(not fs.crossing, 1.0 if fs.crossing else 0.0, "crossing")
    return rep


def _check_angles(L, C, con: AngleCon, tol, exact, out: ClassReport) -> None:
    for corner, base in con.base.items():
        u, v, w = corner
        if u == w:  # degree-1 convention: always 360
            continue
        pu, pv, pw = C.coords[u], C.coords[v], C.coords[w]
        theta = con.tol(corner)
        if exact and theta == 0.0:
            ok = exact_corner_matches(pu, pv, pw, base)
            out.merge(ok, 0.0 if ok else math.inf, f"{corner}")
        else:
            # dot-product window: rotate unit(u-v) by base, compare with unit(w-v)
            ux = exact_to_float(pu[0]) - exact_to_float(pv[0])
            uy = exact_to_float(pu[1]) - exact_to_float(pv[1])
            wx = exact_to_float(pw[0]) - exact_to_float(pv[0])
            wy = exact_to_float(pw[1]) - exact_to_float(pv[1])
            nu = math.hypot(ux, uy)
            nw = math.hypot(wx, wy)
            if nu == 0.0 or nw == 0.0:
                out.merge(False, math.inf, f"degenerate corner {corner}")
                continue
            a = math.radians(base)
            rx = ux * math.cos(a) - uy * math.sin(a)
            ry = ux * math.sin(a) + uy * math.cos(a)
            # |angle - base| via atan2: well conditioned near zero deviation,
            # unlike acos of the dot product
            d = rx * wx + ry * wy
            c = rx * wy - ry * wx
            dev = abs(math.atan2(c, d))
            resid = max(0.0, dev - theta)
            out.merge(resid <= tol, resid, f"{corner}")


def _check_sliceform(L, C, con: SliceCon, tol, exact, out: ClassReport) -> None:
    emb = L.embedding
    if emb is None:
        out.merge(False, math.inf, "sliceform without embedding")
        return
    for v in con.vertices:
        nbrs = emb.order[v]
        if len(nbrs) != 4:
            out.merge(False, math.inf, f"sliceform {v} degree != 4")
            continue
        for (a, b) in ((nbrs[0], nbrs[2]), (nbrs[1], nbrs[3])):
            pv, pa, pb = C.coords[v], C.coords[a], C.coords[b]
            if exact:
                ok = exact_eq(cross(pv, pa, pb), 0) and exact_to_float(dot(pv, pa, pb)) < 0
                out.merge(ok, 0.0 if ok else math.inf, f"{a}-{v}-{b}")
            else:
                ax = exact_to_float(pa[0]) - exact_to_float(pv[0])
                ay = exact_to_float(pa[1]) - exact_to_float(pv[1])
                bx = exact_to_float(pb[0]) - exact_to_float(pv[0])
                by = exact_to_float(pb[1]) - exact_to_float(pv[1])
                na, nb = math.hypot(ax, ay), math.hypot(bx, by)
                if na == 0 or nb == 0:
                    out.merge(False, math.inf, f"degenerate sliceform {v}")
                    continue
                resid = math.hypot(ax / na + bx / nb, ay / na + by / nb)
                out.merge(resid <= tol, resid, f"{a}-{v}-{b}")


def _check_rigid(C, con: RigidCon, tol, exact, out: ClassReport) -> None:
    vs = con.vertices()
    for i in range(len(vs)):
        for j in range(i + 1, len(vs)):
            a, b = vs[i], vs[j]
            ref = _dist2_exact(con.reference[a], con.reference[b])
            if exact:
                got = _dist2_exact(C.coords[a], C.coords[b])
                ok = exact_eq(got, ref)
                out.merge(ok, 0.0 if ok else math.inf, f"{a}-{b}")
            else:
                rd = math.sqrt(exact_to_float(ref))
                gd = math.hypot(
                    exact_to_float(C.coords[a][0]) - exact_to_float(C.coords[b][0]),
                    exact_to_float(C.coords[a][1]) - exact_to_float(C.coords[b][1]),
                )
                resid = abs(gd - rd)
                out.merge(resid <= tol, resid, f"{a}-{b}")


# ----------------------------------------------------------------------
# feature size, offsets, embedding agreement
# ----------------------------------------------------------------------

@dataclass
class FeatureSize:
    value: float
    crossing: bool

    def __float__(self) -> float:
        return self.value


def min_feature_size(L: Linkage, C: Configuration) -> FeatureSize:
    """Min distance from a vertex to a non-incident edge; 0 if crossing."""
    order = L.vertices
    idx = L.index()
    coords = C.as_array(order)
    edges = [(idx[e.u], idx[e.v]) for e in L.edges]
    if any_crossing_arr(coords, edges):
        return FeatureSize(0.0, True)
    if not edges:
        return FeatureSize(math.inf, False)
    return FeatureSize(min_feature_size_arr(coords, edges), False)


def offset(L: Linkage, C: Configuration, corners: Iterable[Corner]) -> List[float]:
    """Signed angle deviations (radians) of corners from their base angles."""
    con = L.angle_constraint()
    if con is None:
        raise LinkageError("linkage has no angle constraint")
    out = []
    for corner in corners:
        if corner not in con.base:
            raise UnknownCorner(str(corner))
        u, v, w = corner
        if u == w:
            out.append(0.0)
            continue
        meas = angle_ccw(C.coords[u], C.coords[v], C.coords[w])
        dev = meas - math.radians(con.base[corner])
        while dev <= -math.pi:
            dev += 2 * math.pi
        while dev > math.pi:
            dev -= 2 * math.pi
        out.append(dev)
    return out


def agrees_with_embedding(L: Linkage, C: Configuration) -> bool:
    """True iff every vertex's realized CCW neighbor order matches sigma."""
    emb = L.embedding
    if emb is None:
        raise LinkageError("no embedding attached")
    for v, nbrs in emb.order.items():
        if len(nbrs) <= 2:
            # cyclic order of <= 2 neighbors is always consistent
            continue
        pv = C.coords[v]
        angs = []
        for u in nbrs:
            pu = C.coords[u]
            angs.append(math.atan2(
                exact_to_float(pu[1]) - exact_to_float(pv[1]),
                exact_to_float(pu[0]) - exact_to_float(pv[0]),
            ))
        # realized CCW order = argsort of angles; must be a rotation of sigma
        order = sorted(range(len(angs)), key=lambda i: angs[i])
        k = order.index(0)
        rotated = [order[(k + i) % len(order)] for i in range(len(order))]
        if rotated != list(range(len(nbrs))):
            return False
    return True


def perturbed(C: Configuration, delta: Mapping[str, Tuple[float, float]]) -> Configuration:
    coords = dict(C.coords)
    for v, (dx, dy) in delta.items():
        x, y = coords[v]
        coords[v] = (exact_to_float(x) + dx, exact_to_float(y) + dy)
    return Configuration({v: (exact_to_float(p[0]), exact_to_float(p[1])) for v, p in coords.items()}, mode="float")
