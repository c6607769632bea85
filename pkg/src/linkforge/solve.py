"""Numeric configuration solving: project a seed onto the constraint set.

Equality constraints (edge lengths, pins, frozen corners, driven corners,
sliceform collinearity) become least-squares residuals; angle windows enter
as one-sided penalties and are re-checked after the solve.  Vertices listed
in ``fixed`` (pinned vertices by default) are eliminated from the variable
vector.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import least_squares
from scipy.sparse import lil_matrix

from .exactnum import exact_to_float
from .model import AngleCon, Configuration, Corner, Linkage, SliceCon, validate_configuration


class NoConvergence(Exception):
    pass


@dataclass
class _Problem:
    linkage: Linkage
    order: List[str]            # movable vertices, in variable order
    fixed_xy: Dict[str, Tuple[float, float]]
    edges: List[Tuple[str, str, float]]
    frozen: List[Tuple[Corner, float]]     # corner, target angle (radians)
    windows: List[Tuple[Corner, float, float]]  # corner, base, tol
    slicepairs: List[Tuple[str, str, str]]      # (a, v, b) collinear through v

    def __post_init__(self):
        self.index = {v: i for i, v in enumerate(self.order)}

    def coords_from(self, x: np.ndarray) -> Dict[str, np.ndarray]:
        pts = {v: x[2 * i: 2 * i + 2] for v, i in self.index.items()}
        for v, p in self.fixed_xy.items():
            pts[v] = np.asarray(p)
        return pts

    def residuals(self, x: np.ndarray) -> np.ndarray:
        pts = self.coords_from(x)
        out: List[float] = []
        for (u, v, ln) in self.edges:
            d = pts[u] - pts[v]
            out.append(math.hypot(d[0], d[1]) - ln)
        for ((a, v, b), target) in self.frozen:
            pu, pv, pw = pts[a], pts[v], pts[b]
            du = pu - pv
            dw = pw - pv
            nu = math.hypot(du[0], du[1])
            nw = math.hypot(dw[0], dw[1])
            ca, sa = math.cos(target), math.sin(target)
            rx = (du[0] * ca - du[1] * sa) / nu
            ry = (du[0] * sa + du[1] * ca) / nu
            out.append(rx - dw[0] / nw)
            out.append(ry - dw[1] / nw)
        for (a, v, b) in self.slicepairs:
            pu, pv, pw = pts[a], pts[v], pts[b]
            du = pu - pv
            dw = pw - pv
            nu = math.hypot(du[0], du[1])
            nw = math.hypot(dw[0], dw[1])
            out.append(du[0] / nu + dw[0] / nw)
            out.append(du[1] / nu + dw[1] / nw)
        for ((a, v, b), base, tol) in self.windows:
            pu, pv, pw = pts[a], pts[v], pts[b]
            du = pu - pv
            dw = pw - pv
            ca, sa = math.cos(base), math.sin(base)
            rx = du[0] * ca - du[1] * sa
            ry = du[0] * sa + du[1] * ca
            crossv = rx * dw[1] - ry * dw[0]
            dotv = rx * dw[0] + ry * dw[1]
            dev = math.atan2(crossv, dotv)
            out.append(max(0.0, abs(dev) - tol))
        return np.asarray(out)

    def sparsity(self) -> lil_matrix:
        rows = (
            len(self.edges)
            + 2 * len(self.frozen)
            + 2 * len(self.slicepairs)
            + len(self.windows)
        )
        S = lil_matrix((rows, 2 * len(self.order)), dtype=bool)
        r = 0

        def touch(row: int, verts: Iterable[str]) -> None:
            for v in verts:
                i = self.index.get(v)
                if i is not None:
                    S[row, 2 * i] = True
                    S[row, 2 * i + 1] = True

        for (u, v, _) in self.edges:
            touch(r, (u, v))
            r += 1
        for ((a, v, b), _) in self.frozen:
            touch(r, (a, v, b))
            touch(r + 1, (a, v, b))
            r += 2
        for (a, v, b) in self.slicepairs:
            touch(r, (a, v, b))
            touch(r + 1, (a, v, b))
            r += 2
        for ((a, v, b), _, _) in self.windows:
            touch(r, (a, v, b))
            r += 1
        return S


def build_problem(
    L: Linkage,
    fixed: Iterable[str] = (),
    drive: Optional[Mapping[Corner, float]] = None,
    seed: Optional[Configuration] = None,
) -> _Problem:
    drive = dict(drive or {})
    fixed_set = set(fixed) | set(L.pins)
    src = seed.coords if seed is not None else {}
    fixed_xy = {}
    for v in fixed_set:
        p = L.pins.get(v)
        if p is None:
            p = src[v]
        fixed_xy[v] = (exact_to_float(p[0]), exact_to_float(p[1]))
    order = [v for v in L.vertices if v not in fixed_set]

    edges = [(e.u, e.v, float(e.length)) for e in L.edges]
    frozen: List[Tuple[Corner, float]] = []
    windows: List[Tuple[Corner, float, float]] = []
    con = L.angle_constraint()
    if con is not None:
        for corner, base in con.base.items():
            u, v, w = corner
            if u == w:
                continue
            target = math.radians(base)
            if corner in drive:
                frozen.append((corner, target + drive[corner]))
            elif con.tclass.get(corner, "frozen") == "frozen":
                frozen.append((corner, target))
            else:
                windows.append((corner, target, con.tol(corner)))
    slicepairs: List[Tuple[str, str, str]] = []
    for c in L.constraints:
        if isinstance(c, SliceCon):
            for v in c.vertices:
                nbrs = L.embedding.order[v]
                slicepairs.append((nbrs[0], v, nbrs[2]))
                slicepairs.append((nbrs[1], v, nbrs[3]))
    return _Problem(L, order, fixed_xy, edges, frozen, windows, slicepairs)


def solve_configuration(
    L: Linkage,
    seed: Configuration,
    fixed: Iterable[str] = (),
    drive: Optional[Mapping[Corner, float]] = None,
    tol: float = 1e-10,
    max_nfev: int = 2000,
) -> Configuration:
    """Project the seed onto the constraint manifold (optionally with driven
    corner offsets).  Raises NoConvergence if the equality residuals do not
    fall below tol."""
    prob = build_problem(L, fixed, drive, seed)
    x0 = np.empty(2 * len(prob.order))
    for v, i in prob.index.items():
        p = seed.coords[v]
        x0[2 * i] = exact_to_float(p[0])
        x0[2 * i + 1] = exact_to_float(p[1])
    if len(x0) == 0:
        return seed.to_float(L.vertices)
    res = least_squares(
        prob.residuals,
        x0,
        jac_sparsity=prob.sparsity(),
        method="trf",
        ftol=1e-15,
        xtol=1e-15,
        gtol=1e-15,
        max_nfev=max_nfev,
    )
    r = prob.residuals(res.x)
    hard = r[: len(r) - len(prob.windows)] if prob.windows else r
    if hard.size and float(np.abs(hard).max()) > tol:
        raise NoConvergence(f"residual {float(np.abs(hard).max()):.3e} > {tol}")
    coords: Dict[str, Tuple[float, float]] = {}
    pts = prob.coords_from(res.x)
    for v in L.vertices:
        p = pts[v]
        coords[v] = (float(p[0]), float(p[1]))
    return Configuration(coords, mode="float")
