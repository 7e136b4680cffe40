"""Standalone SVG line chart for per-period profits, no plotting dependency.

Output is a pure function of the input series: no timestamps, no random ids.
"""

from __future__ import annotations

from typing import Sequence

from .output import format_number

WIDTH = 800
HEIGHT = 600
LEFT, RIGHT, TOP, BOTTOM = 80, 30, 50, 70
DIVISIONS = 5


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;").replace('"', "&quot;")


def _c(value: float) -> str:
    return f"{value:.2f}"


def _extent(values: Sequence[float]) -> tuple[float, float]:
    lo, hi = min(values), max(values)
    if hi == lo:
        pad = abs(hi) * 0.05 or 1.0
    else:
        pad = (hi - lo) * 0.05
    return lo - pad, hi + pad


def profit_chart(
    t: Sequence[float],
    industry: Sequence[float],
    pirate: Sequence[float],
    title: str = "Per-period profit",
    x_label: str = "t (periods)",
    y_label: str = "per-period profit (currency)",
) -> str:
    """Industry (solid) and pirate (dashed) profit against period.

    Both axes are scaled to the data extent plus a 5% margin; the y range is
    widened to include zero so the zero-profit gridline is always drawn.
    """
    if not t or len(t) != len(industry) or len(t) != len(pirate):
        raise ValueError("series must be non-empty and of equal length")
    x_lo, x_hi = _extent(list(t))
    y_lo, y_hi = _extent(list(industry) + list(pirate) + [0.0])
    plot_w = WIDTH - LEFT - RIGHT
    plot_h = HEIGHT - TOP - BOTTOM

    def sx(x):
        return LEFT + (x - x_lo) / (x_hi - x_lo) * plot_w

    def sy(y):
        return TOP + (y_hi - y) / (y_hi - y_lo) * plot_h

    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>',
        f'<text x="{WIDTH / 2:.0f}" y="28" text-anchor="middle" font-family="sans-serif" '
        f'font-size="18">{_escape(title)}</text>',
        f'<rect x="{LEFT}" y="{TOP}" width="{plot_w}" height="{plot_h}" fill="none" stroke="#000000"/>',
    ]
    for i in range(DIVISIONS + 1):
        xv = x_lo + (x_hi - x_lo) * i / DIVISIONS
        yv = y_lo + (y_hi - y_lo) * i / DIVISIONS
        px, py = sx(xv), sy(yv)
        out.append(
            f'<line x1="{_c(px)}" y1="{TOP + plot_h}" x2="{_c(px)}" y2="{TOP + plot_h + 6}" stroke="#000000"/>'
        )
        out.append(
            f'<text x="{_c(px)}" y="{TOP + plot_h + 22}" text-anchor="middle" font-family="sans-serif" '
            f'font-size="12">{format_number(xv, 4)}</text>'
        )
        out.append(f'<line x1="{LEFT - 6}" y1="{_c(py)}" x2="{LEFT}" y2="{_c(py)}" stroke="#000000"/>')
        out.append(
            f'<text x="{LEFT - 10}" y="{_c(py + 4)}" text-anchor="end" font-family="sans-serif" '
            f'font-size="12">{format_number(yv, 4)}</text>'
        )
    zero = sy(0.0)
    out.append(
        f'<line x1="{LEFT}" y1="{_c(zero)}" x2="{LEFT + plot_w}" y2="{_c(zero)}" '
        'stroke="#999999" stroke-width="1"/>'
    )
    for values, colour, dash in ((industry, "#1f77b4", None), (pirate, "#d62728", "6,4")):
        points = " ".join(f"{_c(sx(x))},{_c(sy(y))}" for x, y in zip(t, values))
        extra = f' stroke-dasharray="{dash}"' if dash else ""
        out.append(f'<polyline fill="none" stroke="{colour}" stroke-width="2"{extra} points="{points}"/>')
    out.append(
        f'<text x="{LEFT + plot_w / 2:.0f}" y="{HEIGHT - 20}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="14">{_escape(x_label)}</text>'
    )
    out.append(
        f'<text x="20" y="{TOP + plot_h / 2:.0f}" text-anchor="middle" font-family="sans-serif" '
        f'font-size="14" transform="rotate(-90 20 {TOP + plot_h / 2:.0f})">{_escape(y_label)}</text>'
    )
    lx, ly = WIDTH - RIGHT - 170, TOP + 12
    out.append(f'<rect x="{lx}" y="{ly}" width="160" height="50" fill="#ffffff" stroke="#000000"/>')
    out.append(f'<line x1="{lx + 10}" y1="{ly + 17}" x2="{lx + 40}" y2="{ly + 17}" stroke="#1f77b4" stroke-width="2"/>')
    out.append(f'<text x="{lx + 48}" y="{ly + 21}" font-family="sans-serif" font-size="12">industry</text>')
    out.append(
        f'<line x1="{lx + 10}" y1="{ly + 36}" x2="{lx + 40}" y2="{ly + 36}" stroke="#d62728" '
        'stroke-width="2" stroke-dasharray="6,4"/>'
    )
    out.append(f'<text x="{lx + 48}" y="{ly + 40}" font-family="sans-serif" font-size="12">pirate</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
