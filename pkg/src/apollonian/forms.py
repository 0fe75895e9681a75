"""Exact 4x4 matrix helpers and the three fixed quadratic forms.

Matrices are numpy object arrays holding :class:`fractions.Fraction`
entries, so products and congruences are computed without rounding.
"""
from fractions import Fraction
import math

import numpy as np

__all__ = [
    "exact", "identity", "matmul", "det", "is_integral", "congruence", "is_automorph",
    "form_determinants", "Q_D", "Q_W", "Q_L", "J0", "W0", "A", "Z_INT",
]


def _fraction(x):
    # numpy integers would otherwise survive inside the Fraction
    return Fraction(int(x)) if isinstance(x, np.integer) else Fraction(x)


def exact(rows):
    """Build an object array of Fractions from nested sequences."""
    return np.array([[_fraction(x) for x in row] for row in rows], dtype=object)


def identity(n=4):
    return exact(np.eye(n, dtype=int))


def _scaled(m):
    """(integer object array, denominator) with m == ints / denominator."""
    fr = [x if type(x) is Fraction else _fraction(x) for x in np.asarray(m, dtype=object).flat]
    den = math.lcm(*(f.denominator for f in fr))
    ints = np.array([f.numerator * (den // f.denominator) for f in fr], dtype=object)
    return ints.reshape(np.shape(m)), den


def det(m):
    """Exact determinant: clear denominators, then fraction-free Bareiss elimination."""
    ints, den = _scaled(m)
    a = [list(row) for row in ints]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            pivot = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if pivot is None:
                return Fraction(0)
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return Fraction(sign * a[n - 1][n - 1], den ** n)


def is_integral(m):
    return all(Fraction(x).denominator == 1 for x in np.asarray(m, dtype=object).flat)


def matmul(*ms):
    """Exact product of Fraction matrices.

    Denominators are cleared first so the inner products run on Python
    ints, which is several times faster than Fraction arithmetic.
    """
    out, den = _scaled(ms[0])
    for m in ms[1:]:
        ints, d = _scaled(m)
        out, den = out @ ints, den * d
    return np.array([Fraction(x, den) for x in out.flat], dtype=object).reshape(out.shape)


def congruence(W, Q):
    """Return W^T Q W."""
    return matmul(W.T, Q, W)


def is_automorph(U, Q):
    """True iff U^T Q U == Q exactly."""
    return bool(np.array_equal(congruence(U, Q), Q))


# Descartes form: I - 1/2 * 11^T
Q_D = identity() - exact(np.full((4, 4), Fraction(1, 2)))

# Wilker form: -8 x1 x2 + 2 x3^2 + 2 x4^2
Q_W = exact([[0, -4, 0, 0],
             [-4, 0, 0, 0],
             [0, 0, 2, 0],
             [0, 0, 0, 2]])

Q_L = exact(np.diag([-1, 1, 1, 1]))

J0 = exact([[1, 1, 1, 1],
            [1, 1, -1, -1],
            [1, -1, 1, -1],
            [1, -1, -1, 1]]) * Fraction(1, 2)

# base configuration: lines y = +-1 and unit circles centred at (+-1, 0)
W0 = exact([[2, 0, 0, 1],
            [2, 0, 0, -1],
            [0, 1, 1, 0],
            [0, 1, -1, 0]])

A = J0 @ W0

# Intertwiner Q_W -> Q_L used with Wilker's parametrisation.  The true matrix
# is sqrt(2) * Z_INT; the scalar cancels in every conjugation Z V Z^-1.
Z_INT = exact([[1, 1, 0, 0],
               [0, 0, 0, -1],
               [1, -1, 0, 0],
               [0, 0, -1, 0]])


def form_determinants():
    """(det Q_D, det Q_L, det Q_W), computed."""
    return det(Q_D), det(Q_L), det(Q_W)
