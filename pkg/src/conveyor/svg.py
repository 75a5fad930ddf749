"""SVG rendering: disks in grey, belt arcs in blue, bitangents in red."""

from __future__ import annotations

import math
from typing import Iterable, Optional, Sequence
from xml.sax.saxutils import quoteattr

from .belt import BeltCurve
from .geom import Arc, Disk, TWO_PI, configuration_index

ARC_COLOR = "#1f4fd6"
SEGMENT_COLOR = "#d62728"


def _f(v: float) -> str:
    return f"{v:.6g}"


def render_svg(disks: Sequence[Disk], curve: Optional[BeltCurve] = None,
               highlight: Iterable[int] = (), width: int = 800, margin: float = 0.05,
               title: str = "") -> str:
    """Standalone SVG 1.1 document.  The y axis points up, as in the math."""
    ds = list(disks)
    if not ds:
        raise ValueError("nothing to render")
    index = configuration_index(ds)
    xs = [d.x - d.radius for d in ds] + [d.x + d.radius for d in ds]
    ys = [d.y - d.radius for d in ds] + [d.y + d.radius for d in ds]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    pad = margin * max(x1 - x0, y1 - y0, 1e-9)
    x0, x1, y0, y1 = x0 - pad, x1 + pad, y0 - pad, y1 + pad
    height = max(1, int(round(width * (y1 - y0) / (x1 - x0))))
    stroke = (x1 - x0) / width  # one pixel in user units

    def pt(x, y):
        return f"{_f(x)},{_f(-y)}"  # flip y; the viewBox below uses -y1 as its top

    marked = set(highlight)
    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="{_f(x0)} {_f(-y1)} {_f(x1 - x0)} {_f(y1 - y0)}">',
    ]
    if title:
        out.append(f"<title>{title.replace('&', '&amp;').replace('<', '&lt;')}</title>")
    out.append(f'<g fill="#e8e8e8" stroke="#555555" stroke-width={quoteattr(_f(stroke))}>')
    for d in ds:
        fill = ' fill="#ffe08a"' if d.id in marked else ""
        out.append(f'<circle id="disk-{d.id}" cx="{_f(d.x)}" cy="{_f(-d.y)}" r="{_f(d.radius)}"{fill}/>')
    out.append("</g>")
    if curve is not None:
        w = _f(2.5 * stroke)
        arcs, segs = [], []
        for p in curve.pieces:
            if isinstance(p, Arc):
                d = index[p.disk]
                if p.full or p.sweep >= TWO_PI - 1e-12:
                    arcs.append(f'<circle cx="{_f(d.x)}" cy="{_f(-d.y)}" r="{_f(d.radius)}" fill="none"/>')
                    continue
                if p.sweep <= 1e-12:
                    continue
                a, b = d.point_at(p.start_angle), d.point_at(p.end_angle)
                large = 1 if p.sweep > math.pi else 0
                # ccw in the math frame is the negative-angle direction once y is flipped
                sweep = 0 if p.direction == "ccw" else 1
                arcs.append(f'<path d="M {pt(*a)} A {_f(d.radius)} {_f(d.radius)} 0 {large} {sweep} {pt(*b)}" '
                            f'fill="none"/>')
            else:
                segs.append(f'<line x1="{_f(p.p1.x)}" y1="{_f(-p.p1.y)}" x2="{_f(p.p2.x)}" y2="{_f(-p.p2.y)}"/>')
        out.append(f'<g id="arcs" stroke="{ARC_COLOR}" stroke-width="{w}">')
        out.extend(arcs)
        out.append("</g>")
        out.append(f'<g id="bitangents" stroke="{SEGMENT_COLOR}" stroke-width="{w}">')
        out.extend(segs)
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
