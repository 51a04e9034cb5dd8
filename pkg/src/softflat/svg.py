"""Minimal SVG writers for embeddings and component-ratio traces."""
from __future__ import annotations

from xml.sax.saxutils import escape

import numpy as np

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def _fmt(x):
    return f"{x:.3f}"


def _scaler(lo, hi, out_lo, out_hi):
    span = hi - lo
    if span <= 0:
        mid = (out_lo + out_hi) / 2
        return lambda v: mid
    return lambda v: out_lo + (v - lo) / span * (out_hi - out_lo)


def embedding_svg(coords, edges=(), size=640, margin=40, labels=True) -> str:
    """Nodes with 0-based index labels and straight neighbor edges.

    Uses the first two coordinates; a 1-D embedding is drawn on a line.
    Both axes share one scale so edge lengths stay comparable.
    """
    xy = np.asarray(coords, dtype=np.float64)
    if xy.ndim == 1:
        xy = xy[:, None]
    if xy.shape[1] == 1:
        xy = np.column_stack([xy[:, 0], np.zeros(len(xy))])
    xy = xy[:, :2]
    lo = xy.min(axis=0)
    span = float((xy.max(axis=0) - lo).max()) or 1.0
    inner = size - 2 * margin

    def px(p):
        # y flipped so the plot reads like a math figure
        return margin + (p[0] - lo[0]) / span * inner, size - margin - (p[1] - lo[1]) / span * inner

    P = [px(p) for p in xy]
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
        '<g class="edges" stroke="#888" stroke-width="0.8">',
    ]
    seen = set()
    for e in edges:
        i, j = int(e[0]), int(e[1])
        key = (min(i, j), max(i, j))
        if key in seen:
            continue
        seen.add(key)
        out.append(
            f'<line x1="{_fmt(P[i][0])}" y1="{_fmt(P[i][1])}" x2="{_fmt(P[j][0])}" y2="{_fmt(P[j][1])}"/>'
        )
    out.append("</g>")
    out.append('<g class="nodes" fill="#1f77b4">')
    for i, (x, y) in enumerate(P):
        out.append(f'<circle data-index="{i}" cx="{_fmt(x)}" cy="{_fmt(y)}" r="3"/>')
    out.append("</g>")
    if labels:
        out.append('<g class="labels" font-family="sans-serif" font-size="9" fill="#333">')
        for i, (x, y) in enumerate(P):
            out.append(f'<text x="{_fmt(x + 4)}" y="{_fmt(y - 4)}">{i}</text>')
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def ratio_trace_svg(steps, series, width=720, height=420, margin=50) -> str:
    """One polyline per component (labeled 1..m) of ratio vs step count.

    Every sample is also drawn as a marker, so single-record traces remain
    visible. Raw values ride along in ``data-steps``/``data-ratios``.
    """
    steps = np.asarray(steps, dtype=np.float64)
    series = np.asarray(series, dtype=np.float64)
    m = series.shape[1] if series.ndim == 2 else 0
    sx = _scaler(steps.min(), steps.max(), margin, width - margin)
    hi = float(series.max()) if series.size else 1.0
    sy = _scaler(0.0, hi if hi > 0 else 1.0, height - margin, margin)
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{margin}" y1="{height - margin}" x2="{width - margin}" y2="{height - margin}" stroke="black"/>',
        f'<line x1="{margin}" y1="{margin}" x2="{margin}" y2="{height - margin}" stroke="black"/>',
        f'<text x="{width / 2}" y="{height - 12}" font-family="sans-serif" font-size="12" '
        f'text-anchor="middle">step count</text>',
        f'<text x="14" y="{height / 2}" font-family="sans-serif" font-size="12" '
        f'transform="rotate(-90 14 {height / 2})" text-anchor="middle">component ratio</text>',
    ]
    step_attr = " ".join(repr(float(s)) for s in steps)
    for c in range(m):
        color = PALETTE[c % len(PALETTE)]
        ys = series[:, c]
        pts = [(sx(s), sy(v)) for s, v in zip(steps, ys)]
        ratio_attr = " ".join(repr(float(v)) for v in ys)
        out.append(
            f'<g class="component" data-component="{c + 1}" data-steps="{step_attr}" '
            f'data-ratios="{ratio_attr}" stroke="{color}" fill="{color}">'
        )
        if len(pts) > 1:
            coords = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in pts)
            out.append(f'<polyline fill="none" stroke-width="1.5" points="{coords}"/>')
        for x, y in pts:
            out.append(f'<circle class="marker" cx="{_fmt(x)}" cy="{_fmt(y)}" r="2.5"/>')
        x, y = pts[-1]
        out.append(
            f'<text x="{_fmt(x + 6)}" y="{_fmt(y + 4)}" stroke="none" font-family="sans-serif" '
            f'font-size="12">{escape(str(c + 1))}</text>'
        )
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
