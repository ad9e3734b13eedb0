"""Minimal self-contained SVG line charts (no plotting dependency).

Charts only render columns that already exist in the emitted CSVs.
"""
from __future__ import annotations

import math
from pathlib import Path

__all__ = ["line_chart"]

_COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"]


def _ticks(lo: float, hi: float, n: int = 5) -> list[float]:
    if hi <= lo:
        hi = lo + 1.0
    raw = (hi - lo) / n
    mag = 10.0 ** math.floor(math.log10(raw))
    for m in (1.0, 2.0, 2.5, 5.0, 10.0):
        if raw <= m * mag:
            step = m * mag
            break
    start = math.ceil(lo / step) * step
    out = []
    t = start
    while t <= hi + 1e-12 * abs(hi):
        out.append(round(t, 12))
        t += step
    return out


def line_chart(path: str | Path, x, series: dict, title: str = "",
               x_label: str = "", y_label: str = "", log_y: bool = False,
               width: int = 640, height: int = 420) -> Path:
    """Write a polyline chart of the named series against x."""
    path = Path(path)
    x = [float(v) for v in x]
    named = {k: [float(v) for v in vals] for k, vals in series.items()}
    ys = [v for vals in named.values() for v in vals if math.isfinite(v)]
    if log_y:
        ys = [math.log10(v) for v in ys if v > 0]
        named = {k: [math.log10(v) if v > 0 else float("nan") for v in vals]
                 for k, vals in named.items()}
    if not ys:
        ys = [0.0, 1.0]
    x_lo, x_hi = min(x), max(x)
    y_lo, y_hi = min(ys), max(ys)
    if x_hi == x_lo:
        x_hi = x_lo + 1.0
    if y_hi == y_lo:
        y_hi = y_lo + 1.0
    pad = 0.05 * (y_hi - y_lo)
    y_lo, y_hi = y_lo - pad, y_hi + pad
    ml, mr, mt, mb = 64, 16, 34, 46

    def px(v):
        return ml + (v - x_lo) / (x_hi - x_lo) * (width - ml - mr)

    def py(v):
        return height - mb - (v - y_lo) / (y_hi - y_lo) * (height - mt - mb)

    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
             f'height="{height}" viewBox="0 0 {width} {height}">',
             f'<rect width="{width}" height="{height}" fill="white"/>']
    if title:
        parts.append(f'<text x="{width / 2}" y="20" text-anchor="middle" '
                     f'font-family="sans-serif" font-size="14">{title}</text>')
    # axes
    parts.append(f'<line x1="{ml}" y1="{height - mb}" x2="{width - mr}" '
                 f'y2="{height - mb}" stroke="black"/>')
    parts.append(f'<line x1="{ml}" y1="{mt}" x2="{ml}" y2="{height - mb}" '
                 'stroke="black"/>')
    for t in _ticks(x_lo, x_hi):
        parts.append(f'<line x1="{px(t)}" y1="{height - mb}" x2="{px(t)}" '
                     f'y2="{height - mb + 4}" stroke="black"/>')
        parts.append(f'<text x="{px(t)}" y="{height - mb + 18}" '
                     'text-anchor="middle" font-family="sans-serif" '
                     f'font-size="11">{t:g}</text>')
    for t in _ticks(y_lo, y_hi):
        label = f"1e{t:g}" if log_y else f"{t:g}"
        parts.append(f'<line x1="{ml - 4}" y1="{py(t)}" x2="{ml}" '
                     f'y2="{py(t)}" stroke="black"/>')
        parts.append(f'<text x="{ml - 8}" y="{py(t) + 4}" text-anchor="end" '
                     f'font-family="sans-serif" font-size="11">{label}</text>')
    if x_label:
        parts.append(f'<text x="{(ml + width - mr) / 2}" y="{height - 8}" '
                     'text-anchor="middle" font-family="sans-serif" '
                     f'font-size="12">{x_label}</text>')
    if y_label:
        parts.append(f'<text x="16" y="{(mt + height - mb) / 2}" '
                     'text-anchor="middle" font-family="sans-serif" '
                     f'font-size="12" transform="rotate(-90 16 '
                     f'{(mt + height - mb) / 2})">{y_label}</text>')
    for idx, (name, vals) in enumerate(named.items()):
        color = _COLORS[idx % len(_COLORS)]
        pts = " ".join(f"{px(a):.2f},{py(b):.2f}"
                       for a, b in zip(x, vals) if math.isfinite(b))
        parts.append(f'<polyline points="{pts}" fill="none" stroke="{color}" '
                     'stroke-width="1.5"/>')
        parts.append(f'<text x="{width - mr - 6}" y="{mt + 14 + 14 * idx}" '
                     f'text-anchor="end" font-family="sans-serif" '
                     f'font-size="11" fill="{color}">{name}</text>')
    parts.append("</svg>")
    path.write_text("\n".join(parts))
    return path
