"""Single oriented circles and lines in augmented curvature-center coordinates.

A row is ``(cobar, b, w1, w2)``: the curvature of the image under inversion
in the unit circle, the signed curvature, and curvature times center.  For a
line ``x cos t + y sin t = m`` with inward normal ``(cos t, sin t)`` the row
is ``(2m, 0, cos t, sin t)``.
"""
from dataclasses import dataclass
from fractions import Fraction
import math

__all__ = [
    "Circle", "Line", "circle_to_acc", "line_to_acc", "acc_to_geometry",
    "invert_in_unit_circle", "tangency_value", "tangency_point", "row_norm",
    "circle_key", "DegenerateCircleError", "NotACircleError",
]


class DegenerateCircleError(ValueError):
    pass


class NotACircleError(ValueError):
    pass


@dataclass(frozen=True)
class Circle:
    center: tuple
    radius: object  # signed; negative means the interior is the outside

    @property
    def curvature(self):
        return 1 / self.radius


@dataclass(frozen=True)
class Line:
    normal: tuple  # inward unit normal
    offset: object  # line is normal . p == offset; interior is normal . p > offset


def _q(x):
    return x if isinstance(x, float) else Fraction(x)


def row_norm(row):
    """w1^2 + w2^2 - cobar*b, which is 1 for every genuine circle row."""
    cobar, b, w1, w2 = row
    return w1 * w1 + w2 * w2 - cobar * b


def circle_to_acc(center, radius):
    x, y = (_q(c) for c in center)
    r = _q(radius)
    if r == 0:
        raise DegenerateCircleError("degenerate circle")
    return ((x * x + y * y - r * r) / r, 1 / r, x / r, y / r)


def line_to_acc(normal, offset):
    c, s = (_q(v) for v in normal)
    if isinstance(c, Fraction) and isinstance(s, Fraction):
        ok = c * c + s * s == 1
    else:
        ok = math.isclose(c * c + s * s, 1.0, abs_tol=1e-12)
    if not ok:
        raise NotACircleError("line normal must be a unit vector")
    return (2 * _q(offset), _q(0), c, s)


def acc_to_geometry(row, tol=1e-9):
    cobar, b, w1, w2 = (_q(v) for v in row)
    n = row_norm((cobar, b, w1, w2))
    if isinstance(n, Fraction):
        bad = n != 1
    else:
        bad = abs(n - 1) > tol * max(1.0, abs(cobar * b), w1 * w1 + w2 * w2)
    if bad:
        raise NotACircleError("not a circle row")
    if b == 0:
        return Line((w1, w2), cobar / 2)
    return Circle((w1 / b, w2 / b), 1 / b)


def invert_in_unit_circle(row):
    cobar, b, w1, w2 = row
    return (b, cobar, w1, w2)


def tangency_value(a, b):
    """Bilinear pairing a Q_W^-1 b^T: 1/2 on the diagonal, -1/2 for tangent rows."""
    return (-Fraction(1, 4) * (a[0] * b[1] + a[1] * b[0])
            + Fraction(1, 2) * (a[2] * b[2] + a[3] * b[3]))


def tangency_point(a, b):
    s = a[1] + b[1]
    if s == 0:
        raise ValueError("tangency at infinity or parallel lines")
    return ((a[2] + b[2]) / s, (a[3] + b[3]) / s)


def circle_key(row):
    """Orientation-free exact key: flip sign so b > 0, or b == 0 with (w1, w2) > 0."""
    row = tuple(Fraction(v) for v in row)
    b, w = row[1], row[2:]
    if b < 0 or (b == 0 and w < (0, 0)):
        row = tuple(-v for v in row)
    return row
