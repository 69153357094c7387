"""Barycentric triangle figures as standalone SVG text.

Only d = 3: the simplex is drawn as an equilateral triangle (first coordinate
at the apex, second bottom-left, third bottom-right).  A polynomial is shown
as filled contour bands sampled on a triangular grid; design points are
overlaid in two colors split by permutation parity, so an orbit's even and
odd classes can be told apart at a glance.
"""

from __future__ import annotations

import math
from typing import Optional

from .algebra import SymPoly
from .core import DesignSet, PointVector
from .perm import parity

DEFAULT_GRID = 200
DEFAULT_LEVELS = 12

# red for the even class, green for the odd one
CLASS_COLORS = ("#d62728", "#2ca02c")

# handful of anchor stops, linearly interpolated
_RAMP = (
    (0.0, (0x44, 0x01, 0x54)),
    (0.25, (0x3b, 0x52, 0x8b)),
    (0.5, (0x21, 0x91, 0x8c)),
    (0.75, (0x5e, 0xc9, 0x62)),
    (1.0, (0xfd, 0xe7, 0x25)),
)


def _ramp_color(t: float) -> str:
    t = min(1.0, max(0.0, t))
    for (t0, c0), (t1, c1) in zip(_RAMP, _RAMP[1:]):
        if t <= t1:
            w = 0.0 if t1 == t0 else (t - t0) / (t1 - t0)
            r, g, b = (round(a + w * (bb - a)) for a, bb in zip(c0, c1))
            return f"#{r:02x}{g:02x}{b:02x}"
    return "#ffffff"


def evaluate_float(poly: SymPoly, coords) -> float:
    """Float evaluation regardless of the polynomial's exact coefficients."""
    total = 0.0
    for exps, coeff in poly.terms:
        term = float(coeff)
        for x, e in zip(coords, exps):
            if e:
                term *= float(x) ** e
        total += term
    return total


def parity_classes(design: DesignSet) -> list[tuple[PointVector, int]]:
    """Expanded points tagged 0/1 by the parity of the group element that
    produced them.  Explicit designs are all class 0."""
    if design.group is None:
        return [(p, 0) for p in design.points]
    out = []
    for b in design.base_points:
        for g in design.group.elements():
            out.append((b.permuted(g), parity(g)))
    return out


def class_averages(design: DesignSet, poly: SymPoly) -> dict[int, float]:
    """Mean polynomial value over each parity class."""
    sums: dict[int, float] = {}
    counts: dict[int, int] = {}
    for p, cls in parity_classes(design):
        sums[cls] = sums.get(cls, 0.0) + evaluate_float(poly, p.as_floats())
        counts[cls] = counts.get(cls, 0) + 1
    return {cls: sums[cls] / counts[cls] for cls in sums}


def _corners(side: float, margin: float):
    h = side * math.sqrt(3.0) / 2.0
    a = (margin + side / 2.0, margin)
    b = (margin, margin + h)
    c = (margin + side, margin + h)
    return a, b, c


def barycentric_xy(coords, side: float, margin: float) -> tuple[float, float]:
    a, b, c = _corners(side, margin)
    x1, x2, x3 = (float(v) for v in coords)
    return (x1 * a[0] + x2 * b[0] + x3 * c[0],
            x1 * a[1] + x2 * b[1] + x3 * c[1])


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def _band_polygons(poly: SymPoly, grid: int, levels: int,
                   side: float, margin: float) -> list[tuple[str, str]]:
    """(points-attr, fill) pairs for the filled bands.

    Cell values are sampled at centroids; within each row, consecutive cells
    in the same band merge into one polygon.  Cells in row r are numbered
    a = 0..2r left to right, alternating upward/downward, so a run a0..a1
    spans L[(a0+1)//2 .. a1//2+1] on the lower line and T[a0//2 .. (a1+1)//2]
    on the upper line.
    """
    n = grid

    def line_point(r: int, m: int):
        # m-th grid node on the line with first coordinate (n - r)/n
        return ((n - r) / n, (r - m) / n, m / n)

    values = []
    for r in range(n):
        row = []
        for a in range(2 * r + 1):
            s = a // 2
            if a % 2 == 0:
                verts = (line_point(r, s), line_point(r + 1, s), line_point(r + 1, s + 1))
            else:
                verts = (line_point(r, s), line_point(r, s + 1), line_point(r + 1, s + 1))
            cx = sum(v[0] for v in verts) / 3.0
            cy = sum(v[1] for v in verts) / 3.0
            cz = sum(v[2] for v in verts) / 3.0
            row.append(evaluate_float(poly, (cx, cy, cz)))
        values.append(row)

    vmin = min(min(row) for row in values)
    vmax = max(max(row) for row in values)
    span = vmax - vmin

    def band(v: float) -> int:
        if span <= 0.0:
            return 0
        return min(levels - 1, int((v - vmin) / span * levels))

    polys = []
    for r in range(n):
        bands = [band(v) for v in values[r]]
        a0 = 0
        while a0 <= 2 * r:
            a1 = a0
            while a1 + 1 <= 2 * r and bands[a1 + 1] == bands[a0]:
                a1 += 1
            bl, br = (a0 + 1) // 2, a1 // 2 + 1
            tl, tr = a0 // 2, (a1 + 1) // 2
            pts = [barycentric_xy(line_point(r + 1, bl), side, margin),
                   barycentric_xy(line_point(r + 1, br), side, margin),
                   barycentric_xy(line_point(r, tr), side, margin)]
            if tl != tr:
                pts.append(barycentric_xy(line_point(r, tl), side, margin))
            attr = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in pts)
            polys.append((attr, _ramp_color((bands[a0] + 0.5) / levels)))
            a0 = a1 + 1
    return polys


def render_svg(poly: Optional[SymPoly] = None,
               design: Optional[DesignSet] = None,
               grid: int = DEFAULT_GRID,
               levels: int = DEFAULT_LEVELS,
               side: float = 720.0,
               margin: float = 48.0) -> str:
    """SVG text for a triangle figure: contour bands of poly (if given) and
    design points colored by parity class (if given)."""
    if poly is None and design is None:
        raise ValueError("nothing to draw")
    for obj, what in ((poly, "polynomial"), (design, "design")):
        if obj is not None and obj.d != 3:
            raise ValueError(f"plotting needs d = 3, {what} has d = {obj.d}")
    if grid < 1 or levels < 1:
        raise ValueError("grid and levels must be positive")

    width = side + 2 * margin
    height = side * math.sqrt(3.0) / 2.0 + 2 * margin
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(width)}" '
           f'height="{_fmt(height)}" viewBox="0 0 {_fmt(width)} {_fmt(height)}">',
           f'<rect width="{_fmt(width)}" height="{_fmt(height)}" fill="#ffffff"/>']

    if poly is not None:
        for attr, fill in _band_polygons(poly, grid, levels, side, margin):
            # hairline stroke in the fill color closes the seams between bands
            out.append(f'<polygon points="{attr}" fill="{fill}" '
                       f'stroke="{fill}" stroke-width="0.4"/>')

    corner_attr = " ".join(
        f"{_fmt(x)},{_fmt(y)}" for x, y in _corners(side, margin))
    out.append(f'<polygon points="{corner_attr}" fill="none" '
               f'stroke="#000000" stroke-width="2"/>')

    if design is not None:
        radius = side / 110.0
        for p, cls in parity_classes(design):
            x, y = barycentric_xy(p.as_floats(), side, margin)
            out.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="{_fmt(radius)}" '
                       f'fill="{CLASS_COLORS[cls]}" stroke="#ffffff" '
                       f'stroke-width="1.5"/>')

    out.append("</svg>")
    return "\n".join(out) + "\n"
