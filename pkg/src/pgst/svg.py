"""A dependency-free SVG scatter/polyline writer for small result tables."""

from __future__ import annotations

from typing import Sequence
from xml.sax.saxutils import escape

WIDTH, HEIGHT = 480, 320
MARGIN = 56


def _ticks(lo: float, hi: float, count: int = 5) -> list[float]:
    if hi == lo:
        return [lo]
    step = (hi - lo) / (count - 1)
    return [lo + i * step for i in range(count)]


def line_chart(xs: Sequence[float], ys: Sequence[float], *, title: str = "",
               xlabel: str = "", ylabel: str = "", integer_x: bool = True) -> str:
    """Return an SVG document with axes, a polyline through the points and markers."""
    if len(xs) != len(ys) or not xs:
        raise ValueError("need equal-length, nonempty xs and ys")
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    pad = 0.05 * (y1 - y0 or 1.0)
    y0, y1 = y0 - pad, y1 + pad
    if x1 == x0:
        x0, x1 = x0 - 1, x1 + 1
    pw, ph = WIDTH - 2 * MARGIN, HEIGHT - 2 * MARGIN

    def px(x):
        return MARGIN + (x - x0) / (x1 - x0) * pw

    def py(y):
        return HEIGHT - MARGIN - (y - y0) / (y1 - y0) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<g stroke="black" stroke-width="1">'
        f'<line x1="{MARGIN}" y1="{HEIGHT - MARGIN}" x2="{WIDTH - MARGIN}" y2="{HEIGHT - MARGIN}"/>'
        f'<line x1="{MARGIN}" y1="{MARGIN}" x2="{MARGIN}" y2="{HEIGHT - MARGIN}"/></g>',
    ]
    xt = sorted(set(xs)) if integer_x else _ticks(x0, x1)
    for x in xt:
        label = f"{x:g}" if integer_x else f"{x:.3g}"
        out.append(f'<line x1="{px(x):.2f}" y1="{HEIGHT - MARGIN}" x2="{px(x):.2f}" '
                   f'y2="{HEIGHT - MARGIN + 4}" stroke="black"/>')
        out.append(f'<text x="{px(x):.2f}" y="{HEIGHT - MARGIN + 18}" font-size="11" '
                   f'text-anchor="middle">{label}</text>')
    for y in _ticks(y0, y1):
        out.append(f'<line x1="{MARGIN - 4}" y1="{py(y):.2f}" x2="{MARGIN}" y2="{py(y):.2f}" '
                   f'stroke="black"/>')
        out.append(f'<text x="{MARGIN - 7}" y="{py(y) + 4:.2f}" font-size="11" '
                   f'text-anchor="end">{y:.3g}</text>')
    pts = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in zip(xs, ys))
    out.append(f'<polyline points="{pts}" fill="none" stroke="#1f4e9c" stroke-width="1.5"/>')
    for x, y in zip(xs, ys):
        out.append(f'<circle cx="{px(x):.2f}" cy="{py(y):.2f}" r="3.5" fill="#1f4e9c"/>')
    if title:
        out.append(f'<text x="{WIDTH / 2}" y="{MARGIN / 2}" font-size="13" '
                   f'text-anchor="middle">{escape(title)}</text>')
    if xlabel:
        out.append(f'<text x="{WIDTH / 2}" y="{HEIGHT - 12}" font-size="12" '
                   f'text-anchor="middle">{escape(xlabel)}</text>')
    if ylabel:
        out.append(f'<text x="14" y="{HEIGHT / 2}" font-size="12" text-anchor="middle" '
                   f'transform="rotate(-90 14 {HEIGHT / 2})">{escape(ylabel)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
