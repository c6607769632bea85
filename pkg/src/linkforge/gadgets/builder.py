"""Construction kit for cell gadgets.

A gadget is assembled vertex by vertex on an exact rational grid.  The
combinatorial embedding is derived from the initial coordinates (CCW order
of neighbors), every corner gets a base angle read off the initial geometry
(and asserted to be a multiple of 90 degrees), and corners default to
frozen; the few flexing corners are opened explicitly with a tolerance
class.  Ports are sliceform transmission vertices at cell-edge midpoints.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from ..exactnum import exact_to_float
from ..geometry import cross, dot, sign_of
from ..model import (
    AngleCon,
    CombinatorialEmbedding,
    Configuration,
    Corner,
    Edge,
    Linkage,
    NXCon,
    SliceCon,
)

F = Fraction


@dataclass
class Port:
    """Transmission vertex on a cell edge with its reading corner."""

    name: str
    vertex: str
    corner: Corner
    tolerance: str = "delta"  # or "frozen"


@dataclass
class GadgetInstance:
    kind: str
    linkage: Linkage
    init: Configuration
    ports: Dict[str, Port]
    anchor: Tuple[Fraction, Fraction]
    params: Dict[str, object] = field(default_factory=dict)
    marked: List[str] = field(default_factory=list)

    def port_corners(self, names: Optional[Sequence[str]] = None) -> List[Corner]:
        names = list(self.ports) if names is None else list(names)
        return [self.ports[n].corner for n in names]


class GadgetBuilder:
    def __init__(self, kind: str, eps: float, delta: float):
        self.kind = kind
        self.eps = eps
        self.delta = delta
        self.coords: Dict[str, Tuple[Fraction, Fraction]] = {}
        self.edges: List[Tuple[str, str]] = []
        self.pins: List[str] = []
        self.free: Dict[Corner, str] = {}       # corner -> tolerance class
        self.free_vertex: Dict[str, str] = {}   # all corners at vertex -> class
        self.flex_edges: set = set()            # corners touching these edges flex
        self.hinge_pairs: list = []             # (vertex, neighbor): corners at vertex via that edge flex
        self.sliceforms: List[str] = []
        self.ports: Dict[str, Port] = {}
        self.marked: List[str] = []
        self.params: Dict[str, object] = {}
        self.base_override: Dict[Corner, int] = {}

    # -- construction ------------------------------------------------
    def vertex(self, name: str, x, y, marked: bool = False) -> str:
        if name in self.coords:
            raise ValueError(f"duplicate vertex {name}")
        self.coords[name] = (F(x), F(y))
        if marked:
            self.marked.append(name)
        return name

    def edge(self, u: str, v: str) -> None:
        if u not in self.coords or v not in self.coords:
            raise KeyError(f"edge {u}-{v} before vertices")
        self.edges.append((u, v))

    def path(self, *names: str) -> None:
        for u, v in zip(names, names[1:]):
            self.edge(u, v)

    def chain(self, base: str, pts: Sequence[Tuple[object, object]], marked=False) -> List[str]:
        """Add a polyline of vertices named base+index, edges between them."""
        out = []
        for i, (x, y) in enumerate(pts):
            out.append(self.vertex(f"{base}{i}", x, y, marked=marked))
        self.path(*out)
        return out

    def pin(self, name: str) -> None:
        self.pins.append(name)

    def open_corner(self, u: str, v: str, w: str, cls: str = "eps") -> None:
        self.free[(u, v, w)] = cls

    def open_vertex(self, v: str, cls: str = "eps") -> None:
        """All corners at v get the tolerance class."""
        self.free_vertex[v] = cls

    def flex_edge(self, u: str, v: str) -> None:
        """Every corner involving edge (u, v) flexes with tolerance eps.

        This is how connector bars of parallelogram stages are freed to
        pivot on the rigid bodies they join."""
        self.flex_edges.add(frozenset((u, v)))

    def sliceform(self, v: str) -> None:
        self.sliceforms.append(v)

    def port(self, name: str, vertex: str, corner: Corner, tolerance: str = "delta") -> None:
        self.ports[name] = Port(name, vertex, corner, tolerance)

    # -- assembly ----------------------------------------------------
    def _neighbor_map(self) -> Dict[str, List[str]]:
        nbr: Dict[str, List[str]] = {v: [] for v in self.coords}
        for (u, v) in self.edges:
            nbr[u].append(v)
            nbr[v].append(u)
        return nbr

    def _embedding(self) -> CombinatorialEmbedding:
        order: Dict[str, List[str]] = {}
        for v, nbrs in self._neighbor_map().items():
            pv = self.coords[v]
            def ang(u: str) -> float:
                pu = self.coords[u]
                return math.atan2(
                    exact_to_float(pu[1]) - exact_to_float(pv[1]),
                    exact_to_float(pu[0]) - exact_to_float(pv[0]),
                )
            order[v] = sorted(nbrs, key=ang)
        return CombinatorialEmbedding(order)

    def _base_angle(self, corner: Corner) -> int:
        if corner in self.base_override:
            return self.base_override[corner]
        u, v, w = corner
        if u == w:
            return 360
        pu, pv, pw = self.coords[u], self.coords[v], self.coords[w]
        c = sign_of(cross(pv, pu, pw))
        d = sign_of(dot(pv, pu, pw))
        if d == 0 and c > 0:
            return 90
        if c == 0 and d < 0:
            return 180
        if d == 0 and c < 0:
            return 270
        raise ValueError(
            f"corner {corner} is not on the 90-degree grid "
            f"({exact_to_float(pu[0])},{exact_to_float(pu[1])}) "
            f"({exact_to_float(pv[0])},{exact_to_float(pv[1])}) "
            f"({exact_to_float(pw[0])},{exact_to_float(pw[1])})"
        )

    def build(self, anchor=(0, 0)) -> GadgetInstance:
        emb = self._embedding()
        base: Dict[Corner, int] = {}
        tclass: Dict[Corner, str] = {}
        for v in self.coords:
            for corner in emb.corners_at(v):
                base[corner] = self._base_angle(corner)
                cls = "frozen"
                u, _, w = corner
                if (frozenset((u, v)) in self.flex_edges
                        or frozenset((v, w)) in self.flex_edges):
                    cls = "eps"
                for (hv, hn) in self.hinge_pairs:
                    if v == hv and hn in (u, w):
                        cls = "eps"
                if v in self.free_vertex:
                    cls = self.free_vertex[v]
                if corner in self.free:
                    cls = self.free[corner]
                tclass[corner] = cls
        # sanity: base angles around each vertex sum to 360
        for v in self.coords:
            s = sum(base[c] for c in emb.corners_at(v))
            if s != 360:
                raise ValueError(f"corner angles at {v} sum to {s}")
        edge_objs = []
        for (u, v) in self.edges:
            pu, pv = self.coords[u], self.coords[v]
            d2 = (pu[0] - pv[0]) ** 2 + (pu[1] - pv[1]) ** 2
            # exact sqrt for rational squared lengths
            ln = _exact_sqrt(d2)
            edge_objs.append(Edge(u, v, ln))
        con = AngleCon(base, tclass, eps=self.eps, delta=self.delta)
        constraints: List[object] = [con]
        if self.sliceforms:
            constraints.append(SliceCon(tuple(self.sliceforms)))
        constraints.append(NXCon())
        L = Linkage(
            vertices=list(self.coords),
            edges=edge_objs,
            pins={p: self.coords[p] for p in self.pins},
            constraints=constraints,
            embedding=emb,
        )
        C = Configuration(dict(self.coords), mode="exact")
        return GadgetInstance(
            kind=self.kind, linkage=L, init=C, ports=dict(self.ports),
            anchor=(F(anchor[0]), F(anchor[1])), params=dict(self.params),
            marked=list(self.marked),
        )


def _exact_sqrt(q: Fraction) -> Fraction:
    """Exact square root of a rational with square numerator/denominator."""
    n, d = q.numerator, q.denominator
    rn = math.isqrt(n)
    rd = math.isqrt(d)
    if rn * rn != n or rd * rd != d:
        raise ValueError(f"edge length sqrt({q}) is not rational")
    return Fraction(rn, rd)


# ----------------------------------------------------------------------
# parallel-transport chains ("parallel links")
# ----------------------------------------------------------------------

def parallelogram_stage(
    b: GadgetBuilder,
    tag: str,
    src: Tuple[str, str],
    far: Tuple[str, str],
) -> None:
    """One parallelogram stage: two connector edges between the endpoints
    of two equal, parallel bars.  The four corners flex with tolerance eps;
    the stage forces the far bar's vector to equal the source bar's."""
    a0, a1 = src
    b0, b1 = far
    pa0, pa1 = b.coords[a0], b.coords[a1]
    pb0, pb1 = b.coords[b0], b.coords[b1]
    if (pa1[0] - pa0[0], pa1[1] - pa0[1]) != (pb1[0] - pb0[0], pb1[1] - pb0[1]):
        raise ValueError(f"stage {tag}: bars are not equal vectors")
    if (pb0[0] - pa0[0], pb0[1] - pa0[1]) != (pb1[0] - pa1[0], pb1[1] - pa1[1]):
        raise ValueError(f"stage {tag}: connectors are not parallel")
    b.edge(a0, b0)
    b.edge(a1, b1)
    b.flex_edge(a0, b0)
    b.flex_edge(a1, b1)


def strut(b: GadgetBuilder, name: str, end_a: str, end_b: str, waypoints) -> None:
    """Rigid axis-aligned path hinged at both end vertices: a distance
    constraint between them with interior elbows frozen.  ``waypoints``
    are the interior bend coordinates (may be empty for a single edge)."""
    prev = end_a
    names = []
    for i, (x, y) in enumerate(waypoints):
        nm = b.vertex(f"{name}_{i}", x, y)
        names.append(nm)
        b.edge(prev, nm)
        prev = nm
    b.edge(prev, end_b)
    # free the end corners only: mark first and last edges as flexing at
    # the end vertices via explicit corner opening at build time
    first_other = names[0] if names else end_b
    last_other = names[-1] if names else end_a
    b.hinge_pairs.append((end_a, first_other))
    b.hinge_pairs.append((end_b, last_other))
