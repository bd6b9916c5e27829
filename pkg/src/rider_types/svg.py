"""SVG diagrams of placements: move lines, riders, region labels, shaded cells.

Geometry stays exact (Fractions) up to the final pixel coordinates; every
label drawn is recomputed with :func:`region_of`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .arrangement import Line, build_lines, cell_signs_at, intersection
from .geometry import MoveSet, Placement, Point, region_of

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2")

ROMAN = ((10, "X"), (9, "IX"), (5, "V"), (4, "IV"), (1, "I"))


def roman(n: int) -> str:
    out = []
    for value, sym in ROMAN:
        while n >= value:
            out.append(sym)
            n -= value
    return "".join(out)


@dataclass
class RenderSpec:
    placement: Placement
    moves: MoveSet
    size: int = 600
    margin: float = 0.25
    region_labels: bool = True
    label_pieces: Sequence[int] = (1,)
    roman_labels: bool = False
    piece_labels: bool = True
    shade_points: Sequence[Point] = field(default_factory=tuple)
    title: Optional[str] = None

    def __post_init__(self):
        if self.size <= 0 or self.margin < 0:
            raise ValueError("canvas size must be positive and margin non-negative")
        if self.placement.q == 0:
            raise ValueError("nothing to render: empty placement")


def viewport(placement: Placement, moves: MoveSet, margin) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """Square (xmin, ymin, xmax, ymax) holding every rider and line crossing."""
    lines = build_lines(placement, moves).lines
    pts = list(placement.points)
    for a, b in itertools.combinations(lines, 2):
        p = intersection(a, b)
        if p is not None:
            pts.append(p)
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    cx, cy = (min(xs) + max(xs)) / 2, (min(ys) + max(ys)) / 2
    half = max(max(xs) - min(xs), max(ys) - min(ys), Fraction(2)) / 2
    half *= 1 + Fraction(margin).limit_denominator(1000) * 2
    return (cx - half, cy - half, cx + half, cy + half)


def clip_line(line: Line, box) -> Optional[tuple[Point, Point]]:
    xmin, ymin, xmax, ymax = box
    (px, py), (dx, dy) = line.anchor, tuple(line.direction)
    lo, hi = None, None
    for p, d, a, b in ((px, dx, xmin, xmax), (py, dy, ymin, ymax)):
        if d == 0:
            if not a <= p <= b:
                return None
            continue
        t1, t2 = (a - p) / d, (b - p) / d
        if t1 > t2:
            t1, t2 = t2, t1
        lo = t1 if lo is None else max(lo, t1)
        hi = t2 if hi is None else min(hi, t2)
    if lo is None or lo >= hi:
        return None
    return ((px + lo * dx, py + lo * dy), (px + hi * dx, py + hi * dy))


def clip_polygon(poly: list[Point], line: Line, keep_sign: int) -> list[Point]:
    """Sutherland-Hodgman step keeping points with ``keep_sign * value >= 0``."""
    out = []
    n = len(poly)
    for k in range(n):
        a, b = poly[k], poly[(k + 1) % n]
        va, vb = keep_sign * line.value(a), keep_sign * line.value(b)
        if va >= 0:
            out.append(a)
        if (va > 0 > vb) or (va < 0 < vb):
            t = va / (va - vb)
            out.append((a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])))
    return out


def cell_polygon(point: Point, lines: Sequence[Line], box) -> list[Point]:
    xmin, ymin, xmax, ymax = box
    poly = [(xmin, ymin), (xmax, ymin), (xmax, ymax), (xmin, ymax)]
    for line in lines:
        v = line.value(point)
        if v == 0:
            raise ValueError("shade point lies on a move line")
        poly = clip_polygon(poly, line, 1 if v > 0 else -1)
        if not poly:
            break
    return poly


def render(spec: RenderSpec) -> str:
    placement, moves = spec.placement, spec.moves
    lineset = build_lines(placement, moves)
    box = viewport(placement, moves, spec.margin)
    xmin, ymin, xmax, ymax = box
    scale = Fraction(spec.size) / (xmax - xmin)

    def px(p: Point) -> str:
        return f"{float((p[0] - xmin) * scale):.2f},{float((ymax - p[1]) * scale):.2f}"

    def coords(p: Point) -> tuple[str, str]:
        return (f"{float((p[0] - xmin) * scale):.2f}", f"{float((ymax - p[1]) * scale):.2f}")

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{spec.size}" height="{spec.size}" '
        f'viewBox="0 0 {spec.size} {spec.size}">',
        f'<rect x="0" y="0" width="{spec.size}" height="{spec.size}" fill="white" stroke="black"/>',
    ]
    if spec.title:
        out.append(f"<title>{spec.title}</title>")
    for pt in spec.shade_points:
        poly = cell_polygon(pt, lineset.lines, box)
        if poly:
            out.append(f'<polygon class="shaded-cell" points="{" ".join(px(p) for p in poly)}" '
                       f'fill="black" fill-opacity="0.85"/>')
    for line in lineset.lines:
        seg = clip_line(line, box)
        if seg is None:
            continue
        (x1, y1), (x2, y2) = coords(seg[0]), coords(seg[1])
        colour = PALETTE[(line.owner - 1) % len(PALETTE)]
        out.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="{colour}" stroke-width="1.5"/>')
    radius = (xmax - xmin) / 14
    if spec.region_labels:
        for k in spec.label_pieces:
            centre = placement.points[k - 1]
            for label in range(1, 2 * moves.r + 1):
                vx, vy = moves.sector_interior(label)
                lam = radius / max(abs(vx), abs(vy))
                anchor = (centre[0] + lam * vx, centre[1] + lam * vy)
                shown = region_of(centre, anchor, moves)  # exact, never trusted from the loop index
                text = roman(shown) if spec.roman_labels else str(shown)
                x, y = coords(anchor)
                out.append(f'<text class="region-label" x="{x}" y="{y}" font-size="14" '
                           f'text-anchor="middle" dominant-baseline="middle">{text}</text>')
    for k, p in enumerate(placement.points, start=1):
        x, y = coords(p)
        colour = PALETTE[(k - 1) % len(PALETTE)]
        out.append(f'<circle cx="{x}" cy="{y}" r="5" fill="{colour}"/>')
        if spec.piece_labels:
            out.append(f'<text class="piece-label" x="{float((p[0] - xmin) * scale) + 8:.2f}" '
                       f'y="{float((ymax - p[1]) * scale) - 8:.2f}" font-size="13">P{k}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def shaded_signs(spec: RenderSpec) -> list[tuple[int, ...]]:
    """Cell sign vectors of the shaded cells, for checking a render."""
    lineset = build_lines(spec.placement, spec.moves)
    return [cell_signs_at(lineset, p) for p in spec.shade_points]
