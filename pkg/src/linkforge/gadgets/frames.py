"""Cell frames: the rigid square boundary with transmission ports.

Cells are Q x Q squares whose boundary ring has frozen corners; each cell
edge midpoint can carry a transmission vertex: a sliceform whose boundary
pair stays collinear (keeping the ring rigid) and whose stub pair carries
an angle in and out of the cell through delta-tolerance corners.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Optional, Tuple

from .builder import GadgetBuilder

F = Fraction

SIDES = ("S", "E", "N", "W")

# unit-cell geometry at Q=40; general cells scale by Q/40
_CORNERS = {"SW": (0, 0), "SE": (40, 0), "NE": (40, 40), "NW": (0, 40)}
_MIDS = {"S": (20, 0), "E": (40, 20), "N": (20, 40), "W": (0, 20)}
_IN_DIR = {"S": (0, 1), "E": (-1, 0), "N": (0, -1), "W": (1, 0)}
# boundary neighbor preceding the inward stub in the CCW order at the port;
# the reading corner (pred, b, t_in) then has base angle 90 and its offset
# equals the stub's CCW rotation for every side.
_PRED_CORNER = {"S": "SE", "E": "NE", "N": "NW", "W": "SW"}


def frame_vertex_name(prefix: str, label: str) -> str:
    return f"{prefix}{label}"


def add_cell_frame(
    b: GadgetBuilder,
    scale: Fraction = F(1),
    origin: Tuple[Fraction, Fraction] = (F(0), F(0)),
    ports: Iterable[str] = SIDES,
    prefix: str = "",
    pin: bool = True,
    stub_out: bool = True,
) -> Dict[str, str]:
    """Boundary ring + transmission vertices.  Returns name map."""
    s = F(scale)
    ox, oy = F(origin[0]), F(origin[1])
    names: Dict[str, str] = {}

    def put(label: str, xy, marked=False) -> str:
        nm = frame_vertex_name(prefix, label)
        names[label] = nm
        b.vertex(nm, ox + s * xy[0], oy + s * xy[1], marked=marked)
        return nm

    for lbl, xy in _CORNERS.items():
        put(lbl, xy, marked=True)
    ports = tuple(ports)
    for side in SIDES:
        if side in ports:
            mx, my = _MIDS[side]
            dx, dy = _IN_DIR[side]
            put(f"b{side}", (mx, my), marked=True)
            put(f"t{side}", (mx + 4 * dx, my + 4 * dy), marked=True)
            if stub_out:
                put(f"o{side}", (mx - 4 * dx, my - 4 * dy), marked=True)
    # boundary ring edges
    ring = []
    for side, (c_prev, c_next) in (
        ("S", ("SW", "SE")), ("E", ("SE", "NE")), ("N", ("NE", "NW")), ("W", ("NW", "SW")),
    ):
        if side in ports:
            ring.append((names[c_prev], names[f"b{side}"]))
            ring.append((names[f"b{side}"], names[c_next]))
        else:
            ring.append((names[c_prev], names[c_next]))
    for (u, v) in ring:
        b.edge(u, v)
    # transmission stubs + sliceform + tolerance
    for side in ports:
        bx = names[f"b{side}"]
        b.edge(bx, names[f"t{side}"])
        if stub_out:
            b.edge(bx, names[f"o{side}"])
            b.sliceform(bx)
        b.open_vertex(bx, "delta")
    if pin:
        for lbl in ("SW", "SE", "NW"):
            b.pin(names[lbl])
    return names


def port_corner(names: Dict[str, str], side: str) -> Tuple[str, str, str]:
    """The reading corner of a transmission vertex: (pred, b, t_in)."""
    return (names[_PRED_CORNER[side]], names[f"b{side}"], names[f"t{side}"])
