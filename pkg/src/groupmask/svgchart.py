"""Deterministic SVG bar charts for signal inspection.

Hand-rolled on purpose: identical input always yields identical bytes, which
keeps chart outputs diffable and lets tests compare files directly.
"""

from __future__ import annotations

import numpy as np

__all__ = ["bar_chart"]

_MARGIN = 40.0
_BAR_GAP = 4.0


def _fmt(x: float) -> str:
    return f"{x:.2f}"


def bar_chart(
    values,
    title: str = "",
    width: int = 800,
    height: int = 360,
    labels: list[str] | None = None,
) -> str:
    """Render a signal as an SVG bar chart string.

    Bars carry their 1-based index in a ``data-index`` attribute and the
    exact value in ``data-value``; negative values hang below the zero
    baseline.  An all-zero signal renders bars of zero height.
    """
    v = np.asarray(values, dtype=float)
    if v.ndim != 1 or len(v) == 0:
        raise ValueError("bar_chart needs a non-empty one-dimensional signal")
    if labels is not None and len(labels) != len(v):
        raise ValueError(f"got {len(labels)} labels for {len(v)} values")

    top = max(float(np.max(v)), 0.0)
    bottom = min(float(np.min(v)), 0.0)
    span = top - bottom
    scale = (height - 2 * _MARGIN) / span if span > 0 else 0.0
    baseline = _MARGIN + top * scale

    plot_width = width - 2 * _MARGIN
    step = plot_width / len(v)
    bar_width = max(step - _BAR_GAP, 1.0)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    if title:
        parts.append(
            f'<text x="{_fmt(width / 2)}" y="20" text-anchor="middle" '
            f'font-family="sans-serif" font-size="14">{title}</text>'
        )
    parts.append(
        f'<line x1="{_fmt(_MARGIN)}" y1="{_fmt(baseline)}" x2="{_fmt(width - _MARGIN)}" '
        f'y2="{_fmt(baseline)}" stroke="black" stroke-width="1"/>'
    )
    for i, value in enumerate(v):
        x = _MARGIN + i * step + _BAR_GAP / 2
        bar_height = abs(value) * scale
        y = baseline - bar_height if value >= 0 else baseline
        parts.append(
            f'<rect x="{_fmt(x)}" y="{_fmt(y)}" width="{_fmt(bar_width)}" '
            f'height="{_fmt(bar_height)}" fill="{"steelblue" if value >= 0 else "indianred"}" '
            f'data-index="{i + 1}" data-value="{value!r}"/>'
        )
        tag = labels[i] if labels is not None else str(i + 1)
        parts.append(
            f'<text x="{_fmt(x + bar_width / 2)}" y="{_fmt(height - _MARGIN / 2)}" '
            f'text-anchor="middle" font-family="sans-serif" font-size="10">{tag}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
