"""Single-cell gadgets: angle copying and the angular-coordinate family.

Layouts are given at the reference cell size Q=40 and scale uniformly.
Each port arm is a rigid T: transmission edge up from the boundary
midpoint, crossbar, and two spur bars; arms of consecutive ports are
coupled by two-stage parallelogram chains routed through the quadrant
between them, which locks all arm rotations together while leaving the
common rotation free inside the delta window.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from ..parameters import ParameterSet, toy_parameters
from .builder import GadgetBuilder, GadgetInstance, parallelogram_stage
from .frames import SIDES, add_cell_frame, port_corner

F = Fraction


class AnchorOffGrid(Exception):
    pass


class ParamOutOfRange(Exception):
    pass


def _rotq(pt: Tuple[int, int], q: int, center=(20, 20)) -> Tuple[int, int]:
    """Rotate a reference-layout point by q quarter turns about the cell center."""
    x, y = pt[0] - center[0], pt[1] - center[1]
    for _ in range(q % 4):
        x, y = -y, x
    return (x + center[0], y + center[1])


class CellLayout:
    """Helper for placing reference-layout points (Q=40 units) into a
    builder at a given scale/origin, with per-piece quarter-turn rotation."""

    def __init__(self, b: GadgetBuilder, scale: Fraction, origin, prefix: str):
        self.b = b
        self.s = F(scale)
        self.ox, self.oy = F(origin[0]), F(origin[1])
        self.prefix = prefix

    def xy(self, pt, q: int = 0):
        x, y = _rotq(pt, q)
        return (self.ox + self.s * x, self.oy + self.s * y)

    def v(self, name: str, pt, q: int = 0, marked: bool = False) -> str:
        nm = f"{self.prefix}{name}"
        x, y = self.xy(pt, q)
        self.b.vertex(nm, x, y, marked=marked)
        return nm


# ---------------------------------------------------------------------
# Copy gadget: four-way angle equality
# ---------------------------------------------------------------------
#
# Reference layout, south arm (rotate for E, N, W):
#   crossbar   IN(16,4) - T(20,4) - OUT(22,4), transmission edge b-T
#   in spur    IN - IV(16,6)                    (landing bar of the W chain)
#   out spur   OUT - OS1(22,8) - OS2(22,12)     (source bar of this chain)
#   chain body E1(32,12)-E2(32,8)-E3(32,6)-E4(34,6)-E5(36,6)
#   stage 1    OS1-E2, OS2-E1   (horizontal connectors, vertical flex)
#   stage 2    E4-IV', E5-IN'   (vertical connectors, horizontal flex)
# where IV', IN' are the next arm's in-spur (the chain lands there).

_ARM = {
    "IN": (16, 4), "T": (20, 4), "OUT": (22, 4), "IV": (16, 6),
    "OS1": (22, 8), "OS2": (22, 12),
    "E1": (32, 12), "E2": (32, 8), "E3": (32, 6), "E4": (34, 6), "E5": (36, 6),
}

_SIDE_ORDER = ("S", "E", "N", "W")


def copy_internals(
    lay: CellLayout,
    frame: Dict[str, str],
    sides: Sequence[str] = _SIDE_ORDER,
) -> None:
    """Arms + coupling chains for the Copy gadget (all four ports)."""
    b = lay.b
    arm: Dict[Tuple[str, str], str] = {}
    for q, side in enumerate(_SIDE_ORDER):
        for key, pt in _ARM.items():
            if key == "T":
                arm[(side, "T")] = frame[f"t{side}"]
                continue
            arm[(side, key)] = lay.v(f"{side}_{key}", pt, q, marked=key in ("IN", "OUT"))
    for q, side in enumerate(_SIDE_ORDER):
        nxt = _SIDE_ORDER[(q + 1) % 4]
        a = lambda k: arm[(side, k)]
        n = lambda k: arm[(nxt, k)]
        # arm body
        b.path(a("IN"), a("T"), a("OUT"))
        b.edge(a("IN"), a("IV"))
        b.path(a("OUT"), a("OS1"), a("OS2"))
        # chain body
        b.path(a("E1"), a("E2"), a("E3"), a("E4"), a("E5"))
        # stage 1: out spur -> chain body
        parallelogram_stage(b, f"{side}s1", (a("OS1"), a("OS2")), (a("E2"), a("E1")))
        # stage 2: chain body -> next arm's in spur
        parallelogram_stage(b, f"{side}s2", (a("E4"), a("E5")), (n("IV"), n("IN")))


def make_copy(P: Optional[ParameterSet] = None, scale: Optional[Fraction] = None) -> GadgetInstance:
    P = P or toy_parameters()
    s = F(scale) if scale is not None else F(P.Q, 40)
    b = GadgetBuilder("copy", eps=P.eps, delta=P.delta)
    frame = add_cell_frame(b, scale=s)
    lay = CellLayout(b, s, (0, 0), "")
    copy_internals(lay, frame)
    for q, side in enumerate(_SIDE_ORDER):
        b.port(f"theta{q + 1}", frame[f"b{side}"], port_corner(frame, side))
    b.params["Q"] = P.Q
    return b.build()


# (crossover and the angular family follow below; see crossover_internals
# and angular_internals added further down)



# ---------------------------------------------------------------------
# Angular family: a two-bar chain encodes a position by two angles
# ---------------------------------------------------------------------
#
# Chain: hinge e(8,8) on a frame post, horizontal bar e-f (length R = 12),
# vertical bar f-g, so g = (20,20) + R*Rect(alpha, beta).  alpha enters at
# the W port (couples the e-f body; pivot distance 14.4), beta at the S
# port (couples the f-g body; pivot distance 8).  Layout in Q=40 units.

def angular_internals(
    lay: CellLayout,
    frame: Dict[str, str],
    boundary_post: str,
    with_uvw: bool = False,
    r2: int = 2,
) -> Dict[str, str]:
    b = lay.b
    v = lay.v
    out: Dict[str, str] = {}
    e = v("e", (8, 8), marked=True)
    f = v("f", (20, 8), marked=True)
    g = v("g", (20, 20), marked=True)
    b.edge(boundary_post, e)
    b.open_vertex(e, "eps")          # hinge of the ef body on the post
    ef_mid = v("efm", (9, 8))
    fg_mid = v("fgm", (20, 12))
    # ef bar (with u spliced in for the Start gadget)
    if with_uvw:
        u = v("u", (8 + r2, 8), marked=True)
        b.path(e, ef_mid, u, f)
        w = v("w", (20, 8 + r2), marked=True)
        b.path(f, w, fg_mid, g)
        vv = v("v", (8 + r2, 8 + r2), marked=True)
        b.edge(u, vv)
        b.edge(vv, w)
        b.flex_edge(u, vv)
        b.flex_edge(vv, w)
        out.update(u=u, v=vv, w=w)
    else:
        b.path(e, ef_mid, f)
        b.path(f, fg_mid, g)
    b.open_vertex(f, "eps")          # hinge of the fg body on the ef body
    out.update(e=e, f=f, g=g)

    # EF crossbar foot north of the bar near e
    foot_w = v("efw", (9, 11))
    foot_m = v("eff", (10, 11))
    foot_e = v("efe", (12, 11))
    b.path(ef_mid, foot_w, foot_m)
    b.edge(foot_m, foot_e)

    # alpha coupling: W arm -> plate -> EF foot
    aw1 = v("aw1", (4, 12))
    aw2 = v("aw2", (4, 15))
    b.path(frame["tW"], aw2, aw1)
    p1 = v("p1", (8, 12))
    p2 = v("p2", (8, 15))
    p3 = v("p3", (8, 17))
    p4 = v("p4", (10, 17))
    p5 = v("p5", (12, 17))
    b.path(p1, p2, p3, p4, p5)
    parallelogram_stage(b, "aw_s1", (aw1, aw2), (p1, p2))
    parallelogram_stage(b, "aw_s2", (p4, p5), (foot_m, foot_e))

    # beta coupling: S arm -> riser body east of the chain -> FG spur
    as1 = v("as1", (24, 4))
    as2 = v("as2", (28, 4))
    b.path(frame["tS"], as1, as2)
    q1 = v("q1", (24, 10))
    q2 = v("q2", (28, 10))
    q3 = v("q3", (30, 10))
    q4 = v("q4", (30, 12))
    q5 = v("q5", (30, 16))
    b.path(q1, q2, q3, q4, q5)
    fs1 = v("fs1", (22, 12))
    fs2 = v("fs2", (22, 16))
    b.edge(fg_mid, fs1)
    b.edge(fs1, fs2)
    parallelogram_stage(b, "as_s1", (as1, as2), (q1, q2))
    parallelogram_stage(b, "as_s2", (q4, q5), (fs1, fs2))
    return out


def _angular_cell(kind: str, P: ParameterSet, scale=None, with_uvw=False, r2: int = 2):
    s = F(scale) if scale is not None else F(P.Q, 40)
    b = GadgetBuilder(kind, eps=P.eps, delta=P.delta)
    frame = add_cell_frame(b, scale=s, ports=("S", "W"))
    lay = CellLayout(b, s, (0, 0), "")
    pb = b.vertex("pb", s * 8, 0, marked=True)
    b.edges.remove((frame["SW"], frame["bS"]))
    b.edge(frame["SW"], pb)
    b.edge(pb, frame["bS"])
    keys = angular_internals(lay, frame, pb, with_uvw=with_uvw, r2=r2)
    b.port("alpha", frame["bW"], port_corner(frame, "W"))
    b.port("beta", frame["bS"], port_corner(frame, "S"))
    b.params["Q"] = P.Q
    b.params["R"] = 3 * P.Q // 10
    return b, frame, lay, keys


def make_angular(P: Optional[ParameterSet] = None, scale=None) -> GadgetInstance:
    P = P or toy_parameters()
    b, frame, lay, keys = _angular_cell("angular", P, scale)
    inst = b.build()
    inst.params["g"] = keys["g"]
    return inst


def make_start(P: Optional[ParameterSet] = None, scale=None) -> GadgetInstance:
    """Angular gadget with the drawing parallelogram at radius 2r."""
    P = P or toy_parameters()
    r2 = 2 * P.r
    if not 1 <= r2 <= P.Q // 10:
        raise ParamOutOfRange(f"2r = {r2} does not fit the start cell")
    b, frame, lay, keys = _angular_cell("start", P, None if scale is None else scale, with_uvw=True, r2=r2)
    inst = b.build()
    inst.params["drawing_vertex"] = keys["v"]
    inst.params["g"] = keys["g"]
    return inst


def make_end(P: Optional[ParameterSet] = None, w: Fraction = F(0), scale=None) -> GadgetInstance:
    """Angular gadget with g tied to a boundary anchor: exactly one
    configuration, at R*Rect(alpha, beta) = (w, 0)."""
    P = P or toy_parameters()
    R = 3 * P.Q // 10
    if abs(F(w)) > F(P.Q, 2):
        raise ParamOutOfRange("w out of range for the end tie")
    b, frame, lay, keys = _angular_cell("end", P, scale)
    s = F(scale) if scale is not None else F(P.Q, 40)
    # anchor on the east boundary midpoint; tie edge is horizontal
    anchor = b.vertex("tie", s * 40, s * 20, marked=True)
    b.edges.remove((frame["SE"], frame["NE"]))
    b.edge(frame["SE"], anchor)
    b.edge(anchor, frame["NE"])
    gname = keys["g"]
    b.coords[gname] = (s * 20 + F(w), s * 20)
    b.edge(gname, anchor)
    # the tie bar is frozen at the boundary anchor, so g is pinned rigidly;
    # only g's own corners flex, making the whole cell's configuration unique
    b.open_corner("fgm", gname, "tie", "eps")
    b.open_corner("tie", gname, "fgm", "eps")
    b.params["w"] = F(w)
    inst = b.build()
    inst.params["g"] = gname
    return inst


def make_crossing_end(P: Optional[ParameterSet] = None, scale=None) -> GadgetInstance:
    """Angular gadget plus a free bar whose tip h initially coincides with
    g; configurations with g at the cell center are exactly the crossing
    ones.  Deliberately not globally noncrossing."""
    P = P or toy_parameters()
    b, frame, lay, keys = _angular_cell("crossing_end", P, scale)
    s = F(scale) if scale is not None else F(P.Q, 40)
    # a frozen bar hangs from the north boundary midpoint down to the cell
    # center; its tip h coincides with g exactly when the fed-in value is 0,
    # which is the one crossing configuration
    anchor = b.vertex("tie", s * 20, s * 40, marked=True)
    b.edges.remove((frame["NE"], frame["NW"]))
    b.edge(frame["NE"], anchor)
    b.edge(anchor, frame["NW"])
    h = b.vertex("h", s * 20, s * 20, marked=True)
    b.edge(anchor, h)
    # drop the noncrossing constraint: this gadget crosses by design at h=g
    from ..model import NXCon
    inst_constraints_marker = True
    b.params["crossing_pair"] = (keys["g"], h)
    inst = b.build()
    inst.linkage.constraints = [c for c in inst.linkage.constraints if not isinstance(c, NXCon)]
    inst.params["g"] = keys["g"]
    inst.params["h"] = h
    return inst


def make_vector_creation(P: Optional[ParameterSet] = None, w: int = 1, scale=None) -> GadgetInstance:
    """Angular gadget plus a pivoted bar of length w ending at g: forces
    R*Rect(alpha, beta) = w*(cos t - 1, sin t) where t is the bar angle,
    driven from the E port."""
    P = P or toy_parameters()
    R = 3 * P.Q // 10
    wmax = int(R * P.delta / 2) if P.certified else R // 3
    if not 1 <= w <= max(1, wmax):
        raise ParamOutOfRange(f"w={w} outside [1, {wmax}]")
    s = F(scale) if scale is not None else F(P.Q, 40)
    b = GadgetBuilder("vector_creation", eps=P.eps, delta=P.delta)
    frame = add_cell_frame(b, scale=s, ports=("S", "W", "E"))
    lay = CellLayout(b, s, (0, 0), "")
    pb = b.vertex("pb", s * 8, 0, marked=True)
    b.edges.remove((frame["SW"], frame["bS"]))
    b.edge(frame["SW"], pb)
    b.edge(pb, frame["bS"])
    keys = angular_internals(lay, frame, pb)
    gname = keys["g"]
    cx = 20 - w
    # pivot post for c3 down from the north boundary
    post_top = b.vertex("wpt", s * cx, s * 40, marked=True)
    b.edges.remove((frame["NE"], frame["NW"]))
    b.edge(frame["NE"], post_top)
    b.edge(post_top, frame["NW"])
    pm = lay.v("wpm", (cx, 28))
    c3 = lay.v("c3", (cx, 20), marked=True)
    b.path(post_top, pm, c3)
    b.open_vertex(c3, "eps")
    # w bar body: c3 - g - east tail braced as a rectangle
    b.edge(c3, gname)
    t1 = lay.v("wt1", (21, 20))
    t2 = lay.v("wt2", (23, 20))
    b.path(gname, t1, t2)
    tr1 = lay.v("wr1", (21, 22))
    tr2 = lay.v("wr2", (23, 22))
    b.edge(t1, tr1)
    b.edge(t2, tr2)
    b.edge(tr1, tr2)
    # g joins three collinear bar pieces and the fg bar: open the two
    # corners between the bar line and the fg bar
    b.open_corner("fgm", gname, t1, "eps")
    b.open_corner("c3", gname, "fgm", "eps")
    # theta coupling: E arm -> long horizontal stage -> plate -> tail top
    ae1 = lay.v("ae1", (36, 24))
    ae2 = lay.v("ae2", (36, 26))
    b.path(frame["tE"], ae1, ae2)
    pl1 = lay.v("pl1", (24, 26))
    pl2 = lay.v("pl2", (24, 24))
    pl3 = lay.v("pl3", (23, 24))
    pl4 = lay.v("pl4", (21, 24))
    b.path(pl1, pl2, pl3, pl4)
    parallelogram_stage(b, "th_s1", (ae1, ae2), (pl2, pl1))
    parallelogram_stage(b, "th_s2", (pl4, pl3), (tr1, tr2))
    b.port("alpha", frame["bW"], port_corner(frame, "W"))
    b.port("beta", frame["bS"], port_corner(frame, "S"))
    b.port("theta", frame["bE"], port_corner(frame, "E"))
    b.params["Q"] = P.Q
    b.params["w"] = w
    inst = b.build()
    inst.params["g"] = gname
    inst.params["c3"] = "c3"
    return inst
