"""SVG pictures of strings: endpoints equally spaced along the core, arrows as chords."""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

from .strings import ArrowDiagram, OpenString, VirtualString

_HEAD = (
    '<marker id="head" viewBox="0 0 10 10" refX="10" refY="5" markerWidth="7" markerHeight="7" '
    'orient="auto-start-reverse"><path d="M0,0 L10,5 L0,10 z" fill="black"/></marker>'
)


def _frame(size: int, body: list[str]) -> str:
    return "\n".join(
        [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
            f'viewBox="0 0 {size} {size}">',
            f"<defs>{_HEAD}</defs>",
            *body,
            "</svg>",
            "",
        ]
    )


def _closed(code, signs, size: int) -> str:
    c = size / 2
    radius = size * 0.4
    n = len(code)
    body = [f'<circle cx="{c}" cy="{c}" r="{radius}" fill="none" stroke="black" stroke-width="2"/>']

    def point(p, r=radius):
        angle = math.pi / 2 - 2 * math.pi * p / max(n, 1)
        return c + r * math.cos(angle), c - r * math.sin(angle)

    tails, heads = {}, {}
    for p, (a, role) in enumerate(code):
        (heads if role else tails)[a] = p
    for a in sorted(tails):
        (x1, y1), (x2, y2) = point(tails[a]), point(heads[a])
        body.append(
            f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" '
            f'stroke="black" stroke-width="1.5" marker-end="url(#head)"/>'
        )
    for p, (a, role) in enumerate(code):
        x, y = point(p, radius + 14)
        label = f"{a + 1}{chr(39) if role else ''}"
        if signs is not None and not role:
            label += "+" if signs[a] > 0 else "-"
        body.append(
            f'<text x="{x:.2f}" y="{y:.2f}" font-size="12" text-anchor="middle" '
            f'dominant-baseline="middle">{escape(label)}</text>'
        )
    return _frame(size, body)


def _open(code, size: int) -> str:
    n = len(code)
    left, right = size * 0.08, size * 0.92
    base = size * 0.7
    body = [
        f'<line x1="{left}" y1="{base}" x2="{right}" y2="{base}" stroke="black" stroke-width="2" '
        f'marker-end="url(#head)"/>'
    ]

    def xpos(p):
        return left + (right - left) * (p + 1) / (n + 1)

    tails, heads = {}, {}
    for p, (a, role) in enumerate(code):
        (heads if role else tails)[a] = p
    for a in sorted(tails):
        x1, x2 = xpos(tails[a]), xpos(heads[a])
        r = abs(x2 - x1) / 2
        sweep = 1 if x2 > x1 else 0
        body.append(
            f'<path d="M{x1:.2f},{base} A{r:.2f},{r:.2f} 0 0 {sweep} {x2:.2f},{base}" fill="none" '
            f'stroke="black" stroke-width="1.5" marker-end="url(#head)"/>'
        )
    for p, (a, role) in enumerate(code):
        label = f"{a + 1}{chr(39) if role else ''}"
        body.append(
            f'<text x="{xpos(p):.2f}" y="{base + 18}" font-size="12" text-anchor="middle">{escape(label)}</text>'
        )
    return _frame(size, body)


def to_svg(obj: VirtualString | OpenString | ArrowDiagram, size: int = 400) -> str:
    if isinstance(obj, ArrowDiagram):
        return _closed(obj.code, obj.signs, size)
    if isinstance(obj, OpenString):
        return _open(obj.code, size)
    return _closed(obj.code, None, size)


def write_svg(obj, path: str, size: int = 400) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(to_svg(obj, size))
