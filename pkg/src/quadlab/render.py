"""Deterministic SVG output for stages and escape arcs."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .geometry import Point, Quad
from .iteration import StageSet, cell_polygon


@dataclass(frozen=True)
class RenderStyle:
    white_fill: str = "#ffffff"
    black_fill: str = "#1a1a1a"
    stroke: str = "#7f7f7f"
    stroke_width: str = "0.001"
    canvas: int = 800
    precision: int = 6
    arc_stroke: str = "#d62728"
    arc_width: str = "0.004"

    def __post_init__(self):
        if self.precision < 6:
            raise ValueError("precision must be at least 6 digits")
        if self.canvas < 64:
            raise ValueError("canvas must be at least 64 pixels")


def fmt_decimal(r: Fraction, precision: int) -> str:
    """Exact rational to decimal text, rounded half-to-even, trailing zeros dropped."""
    scaled = round(Fraction(r) * 10 ** precision)  # Fraction.__round__ is half-even
    sign = "-" if scaled < 0 else ""
    digits = str(abs(scaled)).rjust(precision + 1, "0")
    whole, frac = digits[:-precision], digits[-precision:].rstrip("0")
    return f"{sign}{whole}.{frac}" if frac else f"{sign}{whole}"


def _points_attr(pts: Sequence[Point], precision: int) -> str:
    # SVG's y axis points down
    return " ".join(f"{fmt_decimal(p.x, precision)},{fmt_decimal(-p.y, precision)}" for p in pts)


def _header(q: Quad, style: RenderStyle) -> list[str]:
    xs = [v.x for v in q.vertices]
    ys = [v.y for v in q.vertices]
    w, h = max(xs) - min(xs), max(ys) - min(ys)
    mx, my = w / 50, h / 50
    x0, y0 = min(xs) - mx, -(max(ys) + my)
    vw, vh = w + 2 * mx, h + 2 * my
    height = max(1, round(Fraction(style.canvas) * vh / vw))
    p = style.precision
    box = " ".join(fmt_decimal(v, p) for v in (x0, y0, vw, vh))
    return [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{style.canvas}" '
        f'height="{height}" viewBox="{box}">',
        f'<g stroke="{style.stroke}" stroke-width="{style.stroke_width}" stroke-linejoin="round">',
    ]


def _cell_elements(q: Quad, s: StageSet, style: RenderStyle) -> list[str]:
    out = []
    M = s.M
    for r in range(M):
        for c in range(M):
            white = (c, r) in s.white
            fill = style.white_fill if white else style.black_fill
            pts = _points_attr(cell_polygon(q, M, (c, r)).vertices, style.precision)
            out.append(f'<polygon class="{"white" if white else "black"}" data-cell="{c},{r}" '
                       f'fill="{fill}" points="{pts}"/>')
    return out


def render_svg(q: Quad, s: StageSet, style: RenderStyle | None = None) -> str:
    """One polygon per cell of the stage, white and black, row-major."""
    style = style or RenderStyle()
    lines = _header(q, style) + _cell_elements(q, s, style) + ["</g>", "</svg>"]
    return "\n".join(lines) + "\n"


def render_escape_svg(q: Quad, s: StageSet, polyline: Sequence[Point], detour_cells: Sequence[Sequence[Point]] = (),
                      style: RenderStyle | None = None) -> str:
    """The stage with an escape arc drawn on top."""
    style = style or RenderStyle()
    p = style.precision
    lines = _header(q, style) + _cell_elements(q, s, style) + ["</g>"]
    for verts in detour_cells:
        lines.append(f'<polygon class="detour" fill="none" stroke="{style.arc_stroke}" '
                     f'stroke-width="{style.arc_width}" points="{_points_attr(verts, p)}"/>')
    lines.append(f'<polyline class="arc" fill="none" stroke="{style.arc_stroke}" '
                 f'stroke-width="{style.arc_width}" points="{_points_attr(polyline, p)}"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
