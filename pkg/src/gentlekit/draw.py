"""Static zigzag diagrams of strings and homotopy strings (DOT and SVG).

Nodes sit left to right in walk order.  For a string the height of a node
drops by one along each direct letter; for a homotopy string the height is
the degree, so the picture reads as the shape of the complex.
"""
from __future__ import annotations

from dataclasses import dataclass
from xml.sax.saxutils import escape

from .homotopy import HomotopyString
from .strings import StringWord

STEP_X = 70
STEP_Y = 60
MARGIN = 40
RADIUS = 14


@dataclass(frozen=True)
class Zigzag:
    """Drawing data: node labels and heights, arrows as (tail, head, label)."""

    labels: list[str]
    heights: list[int]
    arrows: list[tuple[int, int, str]]
    captions: list[str]


def zigzag_of_string(w: StringWord) -> Zigzag:
    heights = [0]
    arrows = []
    for i, x in enumerate(w.letters):
        if x.inverse:
            heights.append(heights[-1] + 1)
            arrows.append((i + 1, i, x.arrow))
        else:
            heights.append(heights[-1] - 1)
            arrows.append((i, i + 1, x.arrow))
    return Zigzag(list(w.vertices), heights, arrows, ["" for _ in w.vertices])


def zigzag_of_homotopy(h: HomotopyString) -> Zigzag:
    arrows = []
    for i, x in enumerate(h.letters):
        # the differential raises degree: it runs from the lower site to the higher one
        lo, hi = (i, i + 1) if h.degrees[i] < h.degrees[i + 1] else (i + 1, i)
        arrows.append((lo, hi, str(x.path)))
    return Zigzag(list(h.vertices), list(h.degrees), arrows, [f"[{d}]" for d in h.degrees])


def to_dot(z: Zigzag, name: str = "zigzag") -> str:
    lines = [f'digraph "{name}" {{', "  node [shape=circle];"]
    for i, (v, y, c) in enumerate(zip(z.labels, z.heights, z.captions)):
        label = f"{v}\\n{c}" if c else v
        lines.append(f'  n{i} [label="{label}", pos="{i * STEP_X},{y * STEP_Y}!"];')
    for a, b, lab in z.arrows:
        lines.append(f'  n{a} -> n{b} [label="{lab}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_svg(z: Zigzag) -> str:
    top = max(z.heights)
    width = 2 * MARGIN + STEP_X * max(len(z.labels) - 1, 0)
    height = 2 * MARGIN + STEP_Y * (top - min(z.heights)) + 20

    def at(i: int) -> tuple[float, float]:
        return MARGIN + i * STEP_X, MARGIN + (top - z.heights[i]) * STEP_Y

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">',
        "<defs><marker id=\"head\" markerWidth=\"8\" markerHeight=\"8\" refX=\"7\" refY=\"4\" orient=\"auto\">"
        "<path d=\"M0,0 L8,4 L0,8 z\"/></marker></defs>",
    ]
    for a, b, lab in z.arrows:
        (x1, y1), (x2, y2) = at(a), at(b)
        dx, dy = x2 - x1, y2 - y1
        norm = (dx * dx + dy * dy) ** 0.5 or 1.0
        sx, sy = x1 + dx / norm * RADIUS, y1 + dy / norm * RADIUS
        ex, ey = x2 - dx / norm * (RADIUS + 2), y2 - dy / norm * (RADIUS + 2)
        out.append(f'<line class="arrow" x1="{sx:.1f}" y1="{sy:.1f}" x2="{ex:.1f}" y2="{ey:.1f}" '
                   f'stroke="black" marker-end="url(#head)"/>')
        out.append(f'<text class="arrow-label" x="{(x1 + x2) / 2 + 4:.1f}" y="{(y1 + y2) / 2 - 4:.1f}" '
                   f'font-size="11">{escape(lab)}</text>')
    for i, (v, c) in enumerate(zip(z.labels, z.captions)):
        x, y = at(i)
        out.append(f'<circle class="node" cx="{x:.1f}" cy="{y:.1f}" r="{RADIUS}" fill="white" stroke="black"/>')
        out.append(f'<text x="{x:.1f}" y="{y + 4:.1f}" text-anchor="middle" font-size="12">{escape(v)}</text>')
        if c:
            out.append(f'<text class="degree" x="{x:.1f}" y="{y + RADIUS + 14:.1f}" text-anchor="middle" '
                       f'font-size="10">{escape(c)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
