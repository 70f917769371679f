"""Plain SVG emission for 1- and 2-dimensional X-rays.

Walls of dimension 1 become line segments, vertex strata become filled
dots, and the top wall's subchambers get text labels at their
representative points.  Output bytes are a deterministic function of
the input: exact rational layout, fixed two-decimal coordinate
formatting, elements emitted in sorted stratum order.
"""

from __future__ import annotations

from fractions import Fraction
from html import escape
from typing import Mapping

from .arrangement import subchambers
from .ratmath import RatVector
from .xray import WeightedXray

CANVAS = 800
MARGIN = 40  # 5% of the canvas on every side


def render_svg(x: WeightedXray, labels: Mapping[int, str] | None = None) -> str:
    """SVG 1.1 document for a d <= 2 X-ray.

    labels maps top-wall subchamber indices to label text (computed by
    the caller, typically invariant values).  d = 1 X-rays are drawn on
    a horizontal axis with labels above it.
    """
    d = x.torus_rank
    if d > 2:
        raise ValueError("rendering supports d <= 2")
    labels = dict(labels or {})

    def planar(p: RatVector) -> tuple[Fraction, Fraction]:
        return (p[0], p[1]) if d == 2 else (p[0], Fraction(0))

    points = [planar(v) for s in x.strata for v in s.wall.vertices]
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    minx, maxx = min(xs), max(xs)
    miny, maxy = min(ys), max(ys)
    span = max(maxx - minx, maxy - miny)
    scale = Fraction(CANVAS - 2 * MARGIN, 1) / span if span else Fraction(1)
    padx = (CANVAS - 2 * MARGIN - (maxx - minx) * scale) / 2
    pady = (CANVAS - 2 * MARGIN - (maxy - miny) * scale) / 2

    def sx(p) -> str:
        return f"{float(MARGIN + padx + (p[0] - minx) * scale):.2f}"

    def sy(p) -> str:
        return f"{float(CANVAS - (MARGIN + pady + (p[1] - miny) * scale)):.2f}"

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="0 0 {CANVAS} {CANVAS}">',
        f'<rect width="{CANVAS}" height="{CANVAS}" fill="#ffffff"/>',
    ]
    for s in x.strata:
        if s.wall.dim != 1:
            continue
        a, b = (planar(v) for v in s.wall.vertices)
        lines.append(
            f'<line x1="{sx(a)}" y1="{sy(a)}" x2="{sx(b)}" y2="{sy(b)}" '
            'stroke="#1a1a1a" stroke-width="2"/>'
        )
    for s in x.strata:
        if s.wall.dim != 0:
            continue
        p = planar(s.wall.vertices[0])
        lines.append(f'<circle cx="{sx(p)}" cy="{sy(p)}" r="6" fill="#1a1a1a"/>')
    if labels:
        for chamber in subchambers(x, x.top_id):
            text = labels.get(chamber.index)
            if text is None:
                continue
            p = planar(chamber.rep)
            cy = f"{float(CANVAS - (MARGIN + pady + (p[1] - miny) * scale)) - (30.0 if d == 1 else 0.0):.2f}"
            lines.append(
                f'<text x="{sx(p)}" y="{cy}" text-anchor="middle" '
                'dominant-baseline="middle" font-family="sans-serif" '
                f'font-size="30" fill="#b03030">{escape(text)}</text>'
            )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
