"""Self-similar partitions labelled by p-adic digits, rendered as SVG.

For ``p = 4`` a triangle is split at its edge midpoints into four equal
triangles: cells 0, 1 and 2 keep a corner of the parent, cell 3 is the
inverted middle one. Every other ``p`` uses the unit interval cut into
``p`` equal pieces. Either way the cell addressed by ``depth`` digits has
``p**-depth`` of the parent's measure.
"""
from __future__ import annotations

import itertools
import math
from fractions import Fraction
from xml.sax.saxutils import escape

from ._validation import check_int
from .exceptions import PadicWaveError

UNIT_TRIANGLE = ((0.0, 0.0), (1.0, 0.0), (0.5, math.sqrt(3) / 2))
SVG_SIZE = 400.0
MARGIN = 10.0

__all__ = [
    "cell_measure",
    "interval_cell",
    "polygon_area",
    "simplex_svg",
    "triangle_cell",
    "uses_triangle",
]


def uses_triangle(p: int) -> bool:
    return p == 4


def cell_measure(p: int, depth: int) -> Fraction:
    """Measure of one depth-``depth`` cell when the whole simplex has measure 1."""
    return Fraction(1, check_int(p, "p", 2) ** check_int(depth, "depth", 0))


def _check_address(address, p: int) -> tuple[int, ...]:
    address = tuple(int(a) for a in address)
    if any(not 0 <= a < p for a in address):
        raise PadicWaveError(f"address digits must lie in [0, {p})")
    return address


def _midpoint(a, b):
    return ((a[0] + b[0]) / 2, (a[1] + b[1]) / 2)


def triangle_cell(address, vertices=UNIT_TRIANGLE):
    """Vertices of the sub-triangle reached by the base-4 ``address``."""
    A, B, C = vertices
    for a in _check_address(address, 4):
        ab, bc, ca = _midpoint(A, B), _midpoint(B, C), _midpoint(C, A)
        A, B, C = ((A, ab, ca), (ab, B, bc), (ca, bc, C), (bc, ca, ab))[a]
    return (A, B, C)


def interval_cell(address, p: int) -> tuple[float, float]:
    """``[left, right)`` of the interval cell reached by ``address``."""
    left, width = 0.0, 1.0
    for a in _check_address(address, p):
        width /= p
        left += a * width
    return (left, left + width)


def polygon_area(points) -> float:
    """Shoelace area of a simple polygon."""
    s = 0.0
    for (x0, y0), (x1, y1) in zip(points, points[1:] + points[:1]):
        s += x0 * y1 - x1 * y0
    return abs(s) / 2


def _to_svg(pt, scale):
    x, y = pt
    # flip y so the apex points up
    return (MARGIN + x * scale, MARGIN + (UNIT_TRIANGLE[2][1] - y) * scale)


def simplex_svg(p: int, depth: int, highlight=None) -> str:
    """SVG drawing of the depth-``depth`` partition.

    Every cell is a ``<polygon>`` (triangles) or ``<rect>`` (intervals)
    carrying ``data-address``; the highlighted cell gets ``class="highlight"``.
    """
    p = check_int(p, "p", 2)
    depth = check_int(depth, "depth", 0)
    if highlight is not None:
        highlight = _check_address(highlight, p)
        if len(highlight) > depth:
            raise PadicWaveError("highlight address is deeper than the drawing")
    scale = SVG_SIZE - 2 * MARGIN
    shapes = []
    for address in itertools.product(range(p), repeat=depth):
        label = ",".join(map(str, address))
        hit = highlight is not None and address[:len(highlight)] == highlight
        style = ' class="highlight" fill="#f4a261"' if hit else ' fill="none"'
        if uses_triangle(p):
            pts = " ".join(f"{x:.12g},{y:.12g}" for x, y in
                           (_to_svg(v, scale) for v in triangle_cell(address)))
            shapes.append(f'<polygon data-address="{label}" points="{pts}"{style} stroke="black"/>')
        else:
            left, right = interval_cell(address, p)
            shapes.append(
                f'<rect data-address="{label}" x="{MARGIN + left * scale:.12g}" y="{MARGIN:.12g}" '
                f'width="{(right - left) * scale:.12g}" height="40"{style} stroke="black"/>'
            )
    height = (UNIT_TRIANGLE[2][1] * scale if uses_triangle(p) else 40) + 2 * MARGIN
    title = escape(f"p={p} depth={depth}")
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_SIZE:.12g}" height="{height:.12g}">\n'
        f"<title>{title}</title>\n" + "\n".join(shapes) + "\n</svg>\n"
    )
