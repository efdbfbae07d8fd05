"""Standalone SVG 1.1 pictures of a curve and its Whitney data.

Palette: the curve is drawn in dark grey, positive double points in red
(``#d62728``), negative ones in blue (``#1f77b4``), the base point in green
(``#2ca02c``). Double points carry ``class="crossing positive"`` or
``class="crossing negative"`` so they can be counted by tools.
"""

from __future__ import annotations

import math
import os
from pathlib import Path
from xml.sax.saxutils import escape

from immersed import __version__
from immersed.curve import ClosedCurve
from immersed.whitney import WhitneyReport

POSITIVE_COLOR = "#d62728"
NEGATIVE_COLOR = "#1f77b4"
BASE_COLOR = "#2ca02c"
CURVE_COLOR = "#333333"


def _frame(curve: ClosedCurve, size: float, margin: float):
    arr = curve.array
    x0, y0 = arr.min(axis=0)
    x1, y1 = arr.max(axis=0)
    span = max(x1 - x0, y1 - y0) or 1.0
    scale = (size - 2 * margin) / span

    def to_svg(x: float, y: float) -> tuple[float, float]:
        # flip y so the picture keeps the standard orientation
        return margin + (x - x0) * scale, margin + (y1 - y) * scale

    width = 2 * margin + (x1 - x0) * scale
    height = 2 * margin + (y1 - y0) * scale
    return to_svg, width, height


def svg_text(curve: ClosedCurve, report: WhitneyReport | None = None, size: float = 600.0) -> str:
    margin = 40.0
    to_svg, width, height = _frame(curve, size, margin)
    legend_h = 24.0 if report else 0.0
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width:.1f}" height="{height + legend_h:.1f}" '
        f'viewBox="0 0 {width:.1f} {height + legend_h:.1f}">',
        f"<!-- immersed {__version__} -->",
    ]
    pts = [to_svg(x, y) for x, y in curve.vertices]
    d = "M " + " L ".join(f"{x:.3f} {y:.3f}" for x, y in pts) + " Z"
    out.append(f'<path class="curve" d="{d}" fill="none" stroke="{CURVE_COLOR}" stroke-width="1.5"/>')

    # arrowhead halfway along edge 0
    (ax, ay), (bx, by) = pts[0], pts[1 % len(pts)]
    mx, my = (ax + bx) / 2, (ay + by) / 2
    ang = math.atan2(by - ay, bx - ax)
    tip = (mx + 7 * math.cos(ang), my + 7 * math.sin(ang))
    wing1 = (mx + 6 * math.cos(ang + 2.5), my + 6 * math.sin(ang + 2.5))
    wing2 = (mx + 6 * math.cos(ang - 2.5), my + 6 * math.sin(ang - 2.5))
    arrow = " ".join(f"{x:.3f},{y:.3f}" for x, y in (tip, wing1, wing2))
    out.append(f'<polygon class="arrow" points="{arrow}" fill="{CURVE_COLOR}"/>')

    if report is not None:
        bx, by = to_svg(*report.base.location)
        out.append(f'<rect class="base" x="{bx - 4:.3f}" y="{by - 4:.3f}" width="8" height="8" '
                   f'fill="{BASE_COLOR}"/>')
        for s in report.intersections:
            cx, cy = to_svg(*s.base.point)
            kind, color = ("positive", POSITIVE_COLOR) if s.sign > 0 else ("negative", NEGATIVE_COLOR)
            out.append(f'<circle class="crossing {kind}" cx="{cx:.3f}" cy="{cy:.3f}" r="4" fill="{color}"/>')
        legend = (f"index {report.index}   mu {report.mu:+d}   "
                  f"N+ {report.n_plus}   N- {report.n_minus}")
        out.append(f'<text x="{margin:.1f}" y="{height + legend_h - 6:.1f}" '
                   f'font-family="sans-serif" font-size="14">{escape(legend)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_svg(curve: ClosedCurve, report: WhitneyReport | None, path: str | os.PathLike) -> None:
    Path(path).write_text(svg_text(curve, report), encoding="utf-8")
