"""Dependency-free SVG line charts of mean NMI against noise level."""

from __future__ import annotations

from typing import Mapping, Sequence
from xml.sax.saxutils import escape

COLORS = {"numerical": "#1f77b4", "probabilistic": "#ff7f0e", "evidential": "#2ca02c"}
FALLBACK = ("#d62728", "#9467bd", "#8c564b")


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def line_chart(
    title: str,
    series: Mapping[str, Sequence[tuple[int, float, float, float]]],
    width: int = 560,
    height: int = 360,
) -> str:
    """One curve per series, each point ``(noise, mean, lo, hi)``, CI as a band.

    The y axis is fixed to [0, 1]; the x axis spans the noise levels seen.
    """
    left, right, top, bottom = 60, 140, 40, 50
    pw, ph = width - left - right, height - top - bottom
    xs = sorted({p[0] for pts in series.values() for p in pts})
    x0, x1 = (xs[0], xs[-1]) if xs else (0, 1)
    span = (x1 - x0) or 1

    def X(v):
        return left + (v - x0) / span * pw if x1 != x0 else left + pw / 2

    def Y(v):
        return top + (1.0 - v) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="12">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<text x="{left + pw / 2:.1f}" y="22" text-anchor="middle" font-size="15">{escape(title)}</text>',
    ]
    for tick in range(0, 11, 2):
        y = Y(tick / 10)
        out.append(f'<line x1="{left}" y1="{_fmt(y)}" x2="{left + pw}" y2="{_fmt(y)}" stroke="#e0e0e0"/>')
        out.append(f'<text x="{left - 8}" y="{_fmt(y + 4)}" text-anchor="end">{tick / 10:.1f}</text>')
    for v in xs:
        out.append(f'<text x="{_fmt(X(v))}" y="{top + ph + 18}" text-anchor="middle">{v}</text>')
    out.append(
        f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="black"/>'
    )
    out.append(
        f'<text x="{left + pw / 2:.1f}" y="{height - 12}" text-anchor="middle">number of noisy nodes</text>'
    )
    out.append(
        f'<text transform="translate(16 {top + ph / 2:.1f}) rotate(-90)" text-anchor="middle">mean NMI</text>'
    )
    for i, (name, pts) in enumerate(series.items()):
        color = COLORS.get(name, FALLBACK[i % len(FALLBACK)])
        pts = sorted(pts)
        if not pts:
            continue
        band = [f"{_fmt(X(p[0]))},{_fmt(Y(p[3]))}" for p in pts]
        band += [f"{_fmt(X(p[0]))},{_fmt(Y(p[2]))}" for p in reversed(pts)]
        out.append(f'<polygon points="{" ".join(band)}" fill="{color}" fill-opacity="0.15" stroke="none"/>')
        line = " ".join(f"{_fmt(X(p[0]))},{_fmt(Y(p[1]))}" for p in pts)
        out.append(f'<polyline points="{line}" fill="none" stroke="{color}" stroke-width="2"/>')
        for p in pts:
            out.append(f'<circle cx="{_fmt(X(p[0]))}" cy="{_fmt(Y(p[1]))}" r="3" fill="{color}"/>')
        ly = top + 14 + 20 * i
        out.append(
            f'<line x1="{left + pw + 12}" y1="{ly}" x2="{left + pw + 32}" y2="{ly}" stroke="{color}" stroke-width="2"/>'
        )
        out.append(f'<text x="{left + pw + 38}" y="{ly + 4}">{escape(name)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
