"""Deterministic SVG drawings of packings.

The y axis is flipped so the picture has the usual mathematical
orientation.  Circles with negative curvature (the bounding circle) are
drawn as outlines only; lines are clipped to the viewport.
"""
from dataclasses import dataclass
from fractions import Fraction
from xml.sax.saxutils import escape

import numpy as np

from .config import format_rational
from .packing import Packing

__all__ = ["RenderSpec", "default_viewport", "render_svg"]


@dataclass
class RenderSpec:
    viewport: tuple = None  # (xmin, ymin, xmax, ymax); None = fit the circles
    stroke: float = 1.0
    labels: bool = False
    max_circles: int = 5000
    size: int = 800  # pixel width of the output

    def __post_init__(self):
        if self.viewport is not None:
            xmin, ymin, xmax, ymax = self.viewport
            if not (xmax > xmin and ymax > ymin):
                raise ValueError("empty viewport")


def _rows(p):
    rows = p.rows() if isinstance(p, Packing) else list(p)
    # biggest circles first, stable on the exact row for reproducibility
    return sorted(rows, key=lambda r: (abs(Fraction(r[1])), tuple(Fraction(v) for v in r)))


def default_viewport(rows, pad=0.05):
    circles = [r for r in rows if r[1] != 0]
    if not circles:
        return (-1.0, -1.0, 1.0, 1.0)
    c = np.array([[float(r[2]) / float(r[1]), float(r[3]) / float(r[1]), 1 / abs(float(r[1]))]
                  for r in circles])
    xmin, xmax = float(np.min(c[:, 0] - c[:, 2])), float(np.max(c[:, 0] + c[:, 2]))
    ymin, ymax = float(np.min(c[:, 1] - c[:, 2])), float(np.max(c[:, 1] + c[:, 2]))
    dx, dy = (xmax - xmin) * pad, (ymax - ymin) * pad
    return (xmin - dx, ymin - dy, xmax + dx, ymax + dy)


def _clip_line(normal, m, box):
    """Segment of the line normal . p = m inside the box, or None."""
    xmin, ymin, xmax, ymax = box
    n = np.asarray(normal, dtype=float)
    p0, d = n * m, np.array([-n[1], n[0]])
    lo, hi = -np.inf, np.inf
    for k, (a, b) in enumerate(((xmin, xmax), (ymin, ymax))):
        if abs(d[k]) < 1e-15:
            if not a <= p0[k] <= b:
                return None
            continue
        t1, t2 = (a - p0[k]) / d[k], (b - p0[k]) / d[k]
        lo, hi = max(lo, min(t1, t2)), min(hi, max(t1, t2))
    if lo > hi:
        return None
    return p0 + lo * d, p0 + hi * d


def _f(x):
    return "{:.6g}".format(x)


def render_svg(p, spec=None):
    spec = spec or RenderSpec()
    rows = _rows(p)[:spec.max_circles]
    box = spec.viewport or default_viewport(rows)
    xmin, ymin, xmax, ymax = box
    scale = spec.size / (xmax - xmin)
    width, height = spec.size, (ymax - ymin) * scale

    def X(x):
        return (x - xmin) * scale

    def Y(y):
        return (ymax - y) * scale

    out = ['<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">'
           .format(_f(width), _f(height), _f(width), _f(height)),
           '<g fill="none" stroke="black" stroke-width="{}">'.format(_f(spec.stroke))]
    labels = []
    for r in rows:
        bbar, b, w1, w2 = (float(v) for v in r)
        if b == 0:
            seg = _clip_line((w1, w2), bbar / 2, box)
            if seg is not None:
                (x1, y1), (x2, y2) = seg
                out.append('<line x1="{}" y1="{}" x2="{}" y2="{}"/>'.format(
                    _f(X(x1)), _f(Y(y1)), _f(X(x2)), _f(Y(y2))))
            continue
        cx, cy, rad = w1 / b, w2 / b, 1 / abs(b)
        fill = ' fill="#dde6f0"' if b > 0 else ""
        out.append('<circle cx="{}" cy="{}" r="{}"{}/>'.format(
            _f(X(cx)), _f(Y(cy)), _f(rad * scale), fill))
        if spec.labels and rad * scale >= 6:
            size = rad * scale * 0.6 if b > 0 else 14
            ly = Y(cy) if b > 0 else Y(cy + rad) + size * 1.2
            labels.append('<text x="{}" y="{}" font-size="{}">{}</text>'.format(
                _f(X(cx)), _f(ly), _f(size), escape(str(format_rational(Fraction(r[1]))))))
    out.append("</g>")
    if labels:
        out.append('<g text-anchor="middle" dominant-baseline="central" font-family="sans-serif">')
        out.extend(labels)
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
