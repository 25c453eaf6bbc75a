"""Minimal SVG chart emission, no plotting framework.

Charts are assembled as plain strings: deterministic output, diffable
in tests, and no raster toolchain needed.  Coordinates are formatted
to two decimals so files are stable across platforms.
"""

from __future__ import annotations

import numpy as np

_FONT = "font-family='monospace' font-size='11'"

_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf")


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def _polyline(xs, ys, color: str, width: float = 1.5, dash: str = "") -> str:
    pts = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in zip(xs, ys))
    dash_attr = f" stroke-dasharray='{dash}'" if dash else ""
    return (
        f"<polyline points='{pts}' fill='none' stroke='{color}' "
        f"stroke-width='{width}'{dash_attr}/>"
    )


def _document(width: int, height: int, body: list[str]) -> str:
    head = (
        f"<svg xmlns='http://www.w3.org/2000/svg' width='{width}' "
        f"height='{height}' viewBox='0 0 {width} {height}'>"
    )
    return "\n".join([head, *body, "</svg>"]) + "\n"


def _frame(x0, y0, x1, y1) -> str:
    return (
        f"<rect x='{_fmt(x0)}' y='{_fmt(y0)}' width='{_fmt(x1 - x0)}' "
        f"height='{_fmt(y1 - y0)}' fill='none' stroke='#333'/>"
    )


def variance_plot(values, kmeans_cut: float, gmm_cut: float, bagged_cut: float,
                  title: str = "moving variance") -> str:
    """Variance series with the three labelled cutoff lines."""
    values = np.asarray(values, dtype=float)
    w, h, m = 640, 400, 50
    lo = 0.0
    hi = max(float(values.max()), kmeans_cut, gmm_cut, bagged_cut) * 1.05 or 1.0

    def sx(i):
        return m + (w - 2 * m) * i / max(len(values) - 1, 1)

    def sy(v):
        return h - m - (h - 2 * m) * (v - lo) / (hi - lo)

    body = [f"<text x='{m}' y='25' {_FONT}>{title}</text>", _frame(m, m, w - m, h - m)]
    body.append(_polyline([sx(i) for i in range(len(values))],
                          [sy(v) for v in values], "#333", 1.0))
    cuts = [("kmeans", kmeans_cut, "#1f77b4"), ("gmm", gmm_cut, "#2ca02c"),
            ("bagged", bagged_cut, "#d62728")]
    for i, (name, cut, color) in enumerate(cuts):
        y = sy(cut)
        body.append(_polyline([m, w - m], [y, y], color, 1.2, dash="6,3"))
        body.append(
            f"<text x='{w - m + 4}' y='{_fmt(y + 4)}' fill='{color}' {_FONT}>"
            f"{name}={cut:.4g}</text>"
        )
    body.append(
        f"<text x='{m}' y='{h - m + 20}' {_FONT}>0</text>"
        f"<text x='{w - m - 30}' y='{h - m + 20}' {_FONT}>{len(values) - 1}</text>"
    )
    return _document(w + 110, h, body)


def xy_plot(curves, title: str = "gesture") -> str:
    """Overlaid unit-square trajectories; curves = [(points, label), ...]."""
    w, h, m = 440, 440, 50

    def sx(v):
        return m + (w - 2 * m) * v

    def sy(v):
        return h - m - (h - 2 * m) * v

    body = [f"<text x='{m}' y='25' {_FONT}>{title}</text>", _frame(m, m, w - m, h - m)]
    for i, (points, label) in enumerate(curves):
        pts = np.asarray(points, dtype=float)
        color = _PALETTE[i % len(_PALETTE)]
        body.append(_polyline([sx(p) for p in pts[:, 0]],
                              [sy(p) for p in pts[:, 1]], color))
        if label:
            body.append(
                f"<text x='{w - m + 6}' y='{40 + 14 * i}' fill='{color}' "
                f"{_FONT}>{label}</text>"
            )
    body.append(
        f"<text x='{m}' y='{h - m + 20}' {_FONT}>x</text>"
        f"<text x='{m - 20}' y='{m}' {_FONT}>y</text>"
    )
    return _document(w + 90, h, body)


def axes_time_plot(points, title: str = "") -> str:
    """x(t) and y(t) of one curve as stacked panels."""
    pts = np.asarray(points, dtype=float)
    w, ph, m, gap = 640, 180, 45, 30
    h = 2 * ph + gap + 2 * m
    body = [f"<text x='{m}' y='25' {_FONT}>{title}</text>"]
    for panel, (series, name) in enumerate([(pts[:, 0], "x"), (pts[:, 1], "y")]):
        top = m + panel * (ph + gap)
        lo, hi = float(series.min()), float(series.max())
        if hi == lo:
            hi = lo + 1.0
        xs = [m + (w - 2 * m) * i / max(len(series) - 1, 1)
              for i in range(len(series))]
        ys = [top + ph - ph * (v - lo) / (hi - lo) for v in series]
        body.append(_frame(m, top, w - m, top + ph))
        body.append(_polyline(xs, ys, _PALETTE[panel]))
        body.append(f"<text x='{w - m + 6}' y='{top + 14}' {_FONT}>{name}(t)</text>")
    return _document(w + 60, h, body)


def _spectrum(frac: float) -> str:
    """Blue (near) to red (far)."""
    r = int(round(255 * frac))
    return f"#{r:02x}00{255 - r:02x}"


def heatmap(labels, matrix, title: str = "distances") -> str:
    """Distance matrix as a colored grid, blue = near, red = far."""
    matrix = np.asarray(matrix, dtype=float)
    n = matrix.shape[0]
    cell = max(2, min(24, 700 // max(n, 1)))
    m_left, m_top = 70, 60
    peak = float(matrix.max()) or 1.0
    body = [f"<text x='{m_left}' y='25' {_FONT}>{title}</text>"]
    for i in range(n):
        for j in range(n):
            body.append(
                f"<rect x='{m_left + j * cell}' y='{m_top + i * cell}' "
                f"width='{cell}' height='{cell}' "
                f"fill='{_spectrum(matrix[i, j] / peak)}'/>"
            )
    # Tick labels on first template of each letter to keep text sparse.
    seen = set()
    for i, (letter, _) in enumerate(labels):
        if letter in seen:
            continue
        seen.add(letter)
        body.append(
            f"<text x='{m_left - 16}' y='{m_top + i * cell + cell}' {_FONT}>"
            f"{letter}</text>"
        )
        body.append(
            f"<text x='{m_left + i * cell}' y='{m_top - 8}' {_FONT}>{letter}</text>"
        )
    return _document(m_left + n * cell + 40, m_top + n * cell + 40, body)
