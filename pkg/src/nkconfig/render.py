"""SVG drawings of configurations: lines clipped to the padded point bounding box."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional
from xml.sax.saxutils import escape

from .configuration import Configuration, Pencil, largest_pencil
from .geometry import Line, Point, bounding_box

PALETTE = {
    "line": "#444444",
    "pencil": "#1b9e3e",
    "point": "#111111",
    "new": "#d62728",
}


@dataclass(frozen=True)
class RenderOptions:
    width: int = 800
    height: int = 800
    margin: float = 0.08
    point_radius: float = 3.5
    highlight: Optional[str] = None  # None, "pencil" or "new"

    def __post_init__(self):
        if self.width <= 0 or self.height <= 0:
            raise ValueError("image dimensions must be positive")
        if not 0 <= self.margin < 0.5:
            raise ValueError("margin must lie in [0, 0.5)")
        if self.point_radius <= 0:
            raise ValueError("point radius must be positive")


def padded_box(points, pad: Fraction = Fraction(1, 10)) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    x0, y0, x1, y1 = bounding_box(points)
    w, h = x1 - x0, y1 - y0
    side = max(w, h, Fraction(1))
    return x0 - pad * side, y0 - pad * side, x1 + pad * side, y1 + pad * side


def clip_line(line: Line, box: tuple[Fraction, Fraction, Fraction, Fraction]) -> Optional[tuple[Point, Point]]:
    """Segment of ``line`` inside the closed box, computed exactly."""
    x0, y0, x1, y1 = box
    hits: list[Point] = []
    if line.b != 0:
        for x in (x0, x1):
            y = line.y_at(x)
            if y0 <= y <= y1:
                hits.append(Point(x, y))
    if line.a != 0:
        for y in (y0, y1):
            x = line.x_at(y)
            if x0 <= x <= x1:
                hits.append(Point(x, y))
    unique = sorted(set(hits), key=lambda p: (p.x, p.y))
    if len(unique) < 2:
        return None
    return unique[0], unique[-1]


def render_svg(c: Configuration, options: RenderOptions = RenderOptions(),
               pencil: Optional[Pencil] = None, new_points: frozenset[int] = frozenset()) -> str:
    box = padded_box(c.points)
    bx0, by0, bx1, by1 = (float(v) for v in box)
    inner_w = options.width * (1 - 2 * options.margin)
    inner_h = options.height * (1 - 2 * options.margin)
    scale = min(inner_w / (bx1 - bx0), inner_h / (by1 - by0))
    off_x = (options.width - scale * (bx1 - bx0)) / 2
    off_y = (options.height - scale * (by1 - by0)) / 2

    def px(p: Point) -> tuple[float, float]:
        # floats only from here on; y grows downward in SVG
        return off_x + scale * (float(p.x) - bx0), options.height - (off_y + scale * (float(p.y) - by0))

    if options.highlight == "pencil" and pencil is None:
        pencil = largest_pencil(c)
    emphasised = pencil.line_ids if (pencil is not None and options.highlight == "pencil") else frozenset()

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{options.width}" '
        f'height="{options.height}" viewBox="0 0 {options.width} {options.height}">',
        f"<title>{escape(f'({c.n}_{c.k}) configuration')}</title>",
        f'<rect x="0" y="0" width="{options.width}" height="{options.height}" fill="white"/>',
        '<g id="lines" stroke-linecap="round">',
    ]
    for li, rec in enumerate(c.lines):
        seg = clip_line(rec.line, box)
        if seg is None:
            continue
        (xa, ya), (xb, yb) = px(seg[0]), px(seg[1])
        colour, width = (PALETTE["pencil"], 1.6) if li in emphasised else (PALETTE["line"], 0.8)
        out.append(f'<line x1="{xa:.3f}" y1="{ya:.3f}" x2="{xb:.3f}" y2="{yb:.3f}" '
                   f'stroke="{colour}" stroke-width="{width}" data-line="{li}"/>')
    out.append("</g>")
    out.append('<g id="points">')
    for pi, p in enumerate(c.points):
        x, y = px(p)
        colour = PALETTE["new"] if (options.highlight == "new" and pi in new_points) else PALETTE["point"]
        out.append(f'<circle cx="{x:.3f}" cy="{y:.3f}" r="{options.point_radius}" fill="{colour}" data-point="{pi}"/>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
