"""Minimal static SVG 1.1 line plots; no external renderer.

Just enough for reproducible scenario figures: one coordinate frame, axis
ticks, one polyline per series, optional legend.  Output is deterministic
(fixed float formatting, LF line endings).
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

_WIDTH, _HEIGHT = 640, 440
_MARGIN_L, _MARGIN_R, _MARGIN_T, _MARGIN_B = 70, 20, 40, 50
_COLORS = ("#1f6fb2", "#c44e52", "#55a868", "#8172b2", "#ccb974")


def _fmt(x: float) -> str:
    return f"{x:.6g}"


def _ticks(lo: float, hi: float, n: int = 5) -> list[float]:
    if hi <= lo:
        return [lo]
    raw = (hi - lo) / (n - 1)
    mag = 10.0 ** math.floor(math.log10(raw))
    step = min(s * mag for s in (1, 2, 2.5, 5, 10) if s * mag >= raw)
    first = math.ceil(lo / step) * step
    ticks = []
    t = first
    while t <= hi + 1e-9 * step:
        ticks.append(0.0 if abs(t) < 1e-12 * step else t)
        t += step
    return ticks or [lo]


def line_plot(path: str, x: Sequence[float], series: Sequence[Sequence[float]],
              labels: Sequence[str] | None = None, title: str = "",
              xlabel: str = "", ylabel: str = "") -> None:
    """Write a line plot of one or more series over a shared x grid."""
    x = np.asarray(x, dtype=float)
    ys = [np.asarray(y, dtype=float) for y in series]
    if not ys or any(y.shape != x.shape for y in ys):
        raise ValueError("every series must match the x grid in length")
    x_lo, x_hi = float(np.min(x)), float(np.max(x))
    y_lo = min(float(np.min(y)) for y in ys)
    y_hi = max(float(np.max(y)) for y in ys)
    if x_hi == x_lo:
        x_hi = x_lo + 1.0
    if y_hi == y_lo:
        pad = max(abs(y_hi), 1.0) * 0.1
        y_lo, y_hi = y_lo - pad, y_hi + pad
    else:
        pad = (y_hi - y_lo) * 0.05
        y_lo, y_hi = y_lo - pad, y_hi + pad

    plot_w = _WIDTH - _MARGIN_L - _MARGIN_R
    plot_h = _HEIGHT - _MARGIN_T - _MARGIN_B

    def px(v: float) -> float:
        return _MARGIN_L + (v - x_lo) / (x_hi - x_lo) * plot_w

    def py(v: float) -> float:
        return _MARGIN_T + (y_hi - v) / (y_hi - y_lo) * plot_h

    out = []
    out.append('<?xml version="1.0" encoding="UTF-8"?>')
    out.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_WIDTH}" height="{_HEIGHT}" viewBox="0 0 {_WIDTH} {_HEIGHT}">'
    )
    out.append(f'<rect width="{_WIDTH}" height="{_HEIGHT}" fill="white"/>')
    if title:
        out.append(
            f'<text x="{_WIDTH / 2:.1f}" y="24" text-anchor="middle" '
            f'font-family="sans-serif" font-size="15">{title}</text>'
        )
    # axes
    x0, y0 = _MARGIN_L, _MARGIN_T + plot_h
    out.append(
        f'<path d="M {x0} {_MARGIN_T} L {x0} {y0} L {x0 + plot_w} {y0}" '
        'fill="none" stroke="black" stroke-width="1"/>'
    )
    for t in _ticks(x_lo, x_hi):
        xp = px(t)
        out.append(f'<line x1="{xp:.1f}" y1="{y0}" x2="{xp:.1f}" y2="{y0 + 5}" stroke="black"/>')
        out.append(
            f'<text x="{xp:.1f}" y="{y0 + 18}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11">{_fmt(t)}</text>'
        )
    for t in _ticks(y_lo, y_hi):
        yp = py(t)
        out.append(f'<line x1="{x0 - 5}" y1="{yp:.1f}" x2="{x0}" y2="{yp:.1f}" stroke="black"/>')
        out.append(
            f'<text x="{x0 - 8}" y="{yp + 4:.1f}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11">{_fmt(t)}</text>'
        )
    if xlabel:
        out.append(
            f'<text x="{_MARGIN_L + plot_w / 2:.1f}" y="{_HEIGHT - 12}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="13">{xlabel}</text>'
        )
    if ylabel:
        yc = _MARGIN_T + plot_h / 2
        out.append(
            f'<text x="18" y="{yc:.1f}" text-anchor="middle" font-family="sans-serif" '
            f'font-size="13" transform="rotate(-90 18 {yc:.1f})">{ylabel}</text>'
        )
    for i, y in enumerate(ys):
        color = _COLORS[i % len(_COLORS)]
        points = " ".join(f"{px(xv):.2f},{py(yv):.2f}" for xv, yv in zip(x, y))
        out.append(
            f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{points}"/>'
        )
        if labels:
            ly = _MARGIN_T + 16 + 16 * i
            lx = _MARGIN_L + plot_w - 130
            out.append(
                f'<line x1="{lx}" y1="{ly - 4}" x2="{lx + 24}" y2="{ly - 4}" '
                f'stroke="{color}" stroke-width="1.5"/>'
            )
            out.append(
                f'<text x="{lx + 30}" y="{ly}" font-family="sans-serif" '
                f'font-size="12">{labels[i]}</text>'
            )
    out.append("</svg>")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(out) + "\n")
