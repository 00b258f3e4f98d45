"""Minimal deterministic SVG scatter plots with an optional fitted curve."""
from __future__ import annotations

import math
from typing import Callable, Sequence
from xml.sax.saxutils import escape

WIDTH, HEIGHT = 640, 420
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 80, 20, 30, 60
CURVE_POINTS = 200


def nice_ticks(lo: float, hi: float, target: int = 6) -> list[float]:
    if hi == lo:
        lo, hi = lo - 1, hi + 1
    raw = (hi - lo) / max(target - 1, 1)
    mag = 10 ** math.floor(math.log10(raw))
    step = next(m * mag for m in (1, 2, 2.5, 5, 10) if m * mag >= raw)
    first = math.ceil(lo / step - 1e-9) * step
    ticks = []
    t = first
    while t <= hi + step * 1e-9:
        ticks.append(round(t, 12))
        t += step
    return ticks


def _fmt(v: float) -> str:
    return f"{v:.2f}".rstrip("0").rstrip(".")


def scatter_svg(xs: Sequence[float], ys: Sequence[float], *, xlabel: str = "x",
                ylabel: str = "y", title: str = "",
                curve: Callable[[float], float] | None = None) -> str:
    """Scatter of (xs, ys); *curve* is sampled at 200 points across the x range."""
    if not xs:
        raise ValueError("nothing to plot")
    x0, x1 = min(xs), max(xs)
    if x0 == x1:
        x0, x1 = x0 - 1, x1 + 1
    curve_xy = []
    if curve is not None:
        curve_xy = [(x, curve(x)) for x in
                    (x0 + (x1 - x0) * i / (CURVE_POINTS - 1) for i in range(CURVE_POINTS))]
    all_y = list(ys) + [y for _, y in curve_xy]
    y0, y1 = min(all_y), max(all_y)
    pad = (y1 - y0) * 0.05 or abs(y0) * 0.05 or 1.0
    y0, y1 = y0 - pad, y1 + pad

    pw = WIDTH - MARGIN_L - MARGIN_R
    ph = HEIGHT - MARGIN_T - MARGIN_B

    def sx(x):
        return MARGIN_L + (x - x0) / (x1 - x0) * pw

    def sy(y):
        return MARGIN_T + ph - (y - y0) / (y1 - y0) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<g stroke="black" stroke-width="1">'
        f'<line x1="{MARGIN_L}" y1="{MARGIN_T + ph}" x2="{MARGIN_L + pw}" y2="{MARGIN_T + ph}"/>'
        f'<line x1="{MARGIN_L}" y1="{MARGIN_T}" x2="{MARGIN_L}" y2="{MARGIN_T + ph}"/></g>',
    ]
    out.append('<g font-family="sans-serif" font-size="11" fill="black">')
    for t in nice_ticks(x0, x1):
        if x0 <= t <= x1:
            px = sx(t)
            out.append(f'<line x1="{px:.2f}" y1="{MARGIN_T + ph}" x2="{px:.2f}" '
                       f'y2="{MARGIN_T + ph + 5}" stroke="black"/>')
            out.append(f'<text x="{px:.2f}" y="{MARGIN_T + ph + 18}" '
                       f'text-anchor="middle">{_fmt(t)}</text>')
    for t in nice_ticks(y0, y1):
        if y0 <= t <= y1:
            py = sy(t)
            out.append(f'<line x1="{MARGIN_L - 5}" y1="{py:.2f}" x2="{MARGIN_L}" '
                       f'y2="{py:.2f}" stroke="black"/>')
            out.append(f'<text x="{MARGIN_L - 8}" y="{py + 4:.2f}" '
                       f'text-anchor="end">{t:.4g}</text>')
    out.append(f'<text x="{MARGIN_L + pw / 2:.1f}" y="{HEIGHT - 15}" '
               f'text-anchor="middle">{escape(xlabel)}</text>')
    out.append(f'<text x="18" y="{MARGIN_T + ph / 2:.1f}" text-anchor="middle" '
               f'transform="rotate(-90 18 {MARGIN_T + ph / 2:.1f})">{escape(ylabel)}</text>')
    if title:
        out.append(f'<text x="{WIDTH / 2:.1f}" y="18" text-anchor="middle" '
                   f'font-size="13">{escape(title)}</text>')
    out.append("</g>")
    if curve_xy:
        pts = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in curve_xy)
        out.append(f'<polyline fill="none" stroke="#c0392b" stroke-width="1.5" points="{pts}"/>')
    out.append('<g fill="#1f4e79">')
    for x, y in zip(xs, ys):
        out.append(f'<circle cx="{sx(x):.2f}" cy="{sy(y):.2f}" r="3.5"/>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
