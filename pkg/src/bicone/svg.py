"""Light-cone diagram in the (x, t) plane, SVG 1.1.

The event A sits at the origin; each record contributes an event B at its
separation. The inner cone has slope 1/c_g, the outer one slope 1/c. An A->B
path is drawn when B is reachable inside the outer (quantum) cone.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from bicone.causality import CausalRecord, Causality
from bicone.io import write_text

SIZE = 400
MARGIN = 20


def _horizontal(rec: CausalRecord) -> float:
    d = rec.delta.components
    if d[2] == 0 and d[3] == 0:
        return float(d[1])
    return float(math.copysign(np.linalg.norm(d[1:]), d[1] if d[1] != 0 else 1.0))


def _num(v: float) -> str:
    s = f"{v:.3f}"
    return "0.000" if s == "-0.000" else s


def cone_svg(records: Sequence[CausalRecord], c: float, c_g: float, title: str = "bimetric light cones") -> str:
    if not (c >= c_g > 0):
        raise ValueError(f"need c >= c_g > 0, got c={c}, c_g={c_g}")
    pts = [(_horizontal(r), float(r.delta.components[0])) for r in records]
    extent = 1.0
    for x, t in pts:
        extent = max(extent, abs(x), abs(t))
    extent *= 1.25
    centre = SIZE / 2
    scale = (SIZE / 2 - MARGIN) / extent

    def px(x, t):
        return _num(centre + x * scale), _num(centre - t * scale)

    def cone(speed, name, style):
        # clip each generator at the edge of the plotted square
        reach = min(extent, extent * speed)
        height = reach / speed
        out = []
        for sign, label in ((1, "future"), (-1, "past")):
            a = px(-reach, sign * height)
            o = px(0.0, 0.0)
            b = px(reach, sign * height)
            out.append(
                f'<polyline id="{name}-{label}" class="{name}" points="{a[0]},{a[1]} {o[0]},{o[1]} {b[0]},{b[1]}" '
                f'fill="none" {style}/>'
            )
        return out

    lines = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}">',
        f"<title>{title}</title>",
        f'<desc>c = {c!r}, c_g = {c_g!r}, extent = {extent!r}</desc>',
        f'<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="white"/>',
    ]
    lo, hi = px(-extent, 0)[0], px(extent, 0)[0]
    lines.append(f'<line id="axis-x" x1="{lo}" y1="{_num(centre)}" x2="{hi}" y2="{_num(centre)}" stroke="#999"/>')
    top, bottom = px(0, extent)[1], px(0, -extent)[1]
    lines.append(f'<line id="axis-t" x1="{_num(centre)}" y1="{bottom}" x2="{_num(centre)}" y2="{top}" stroke="#999"/>')
    lines += cone(c, "outer-cone", 'stroke="#1f77b4" stroke-width="2"')
    lines += cone(c_g, "inner-cone", 'stroke="#d62728" stroke-width="2" stroke-dasharray="6,3"')

    for i, (rec, (x, t)) in enumerate(zip(records, pts)):
        bx, by = px(x, t)
        if rec.class_ghat is not Causality.SPACELIKE:
            lines.append(
                f'<line id="path-{i}" class="signal" x1="{_num(centre)}" y1="{_num(centre)}" x2="{bx}" y2="{by}" '
                'stroke="#2ca02c" stroke-width="1.5"/>'
            )
        lines.append(
            f'<circle id="event-B{i}" class="event {rec.class_g.value}-g {rec.class_ghat.value}-ghat" '
            f'cx="{bx}" cy="{by}" r="4" fill="black" data-x="{x!r}" data-t="{t!r}"/>'
        )
        lines.append(f'<text x="{bx}" y="{by}" dx="6" dy="-6" font-size="12">B{i}</text>')
    lines.append(f'<circle id="event-A" class="event" cx="{_num(centre)}" cy="{_num(centre)}" r="4" fill="black"/>')
    lines.append(f'<text x="{_num(centre)}" y="{_num(centre)}" dx="6" dy="14" font-size="12">A</text>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def emit_cone_svg(records: Sequence[CausalRecord], c: float, c_g: float, out) -> str:
    return write_text(out, cone_svg(records, c, c_g))
