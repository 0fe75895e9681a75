"""Ordered, oriented Descartes configurations as 4x4 ACC matrices."""
from dataclasses import dataclass
from fractions import Fraction
import itertools
import json

import numpy as np

from .circle import tangency_value
from .forms import J0, Q_D, Q_W, W0, det, exact

__all__ = [
    "ConfigClass", "NotDescartesError", "W0", "W_D0", "W_D0_DUAL",
    "W_D0_DUAL_PRINTED", "validate_acc", "is_valid_acc", "validate_ccm",
    "lift_ccm_to_acc", "total_orientation", "dual_configuration", "DUALITY",
    "descartes_circle_check", "permute_rows", "reverse_orientation",
    "canonical_unordered", "config_to_json", "config_from_json",
    "format_rational", "parse_rational",
]


class NotDescartesError(ValueError):
    pass


@dataclass(frozen=True)
class ConfigClass:
    det_sign: int
    orientation: int

    @property
    def component(self):
        return "M{}^{}".format("+" if self.det_sign > 0 else "-",
                               "up" if self.orientation > 0 else "down")


# outer unit circle (curvature -1) with circles of curvature 2, 2, 3 inside
W_D0 = exact([[1, -1, 0, 0],
              [0, 2, 1, 0],
              [0, 2, -1, 0],
              [1, 3, 0, -2]])

# Dual of W_D0 with its rows listed as in the published figure labelling.
# The published matrix has +1 in entry (3, 4); that row is then not tangent to
# row 2, and the value consistent with D * W_D0 is -1.
W_D0_DUAL_PRINTED = exact([[0, 0, 0, 1],
                           [1, 1, -1, -1],
                           [1, 1, 1, 1],
                           [0, 4, 0, -1]])
W_D0_DUAL = exact([[0, 0, 0, 1],
                   [1, 1, -1, -1],
                   [1, 1, 1, -1],
                   [0, 4, 0, -1]])

DUALITY = -Q_D


def _as_exact(W):
    W = np.asarray(W, dtype=object)
    if W.shape != (4, 4):
        raise NotDescartesError("expected a 4x4 matrix, got shape {}".format(W.shape))
    return exact(W)


def total_orientation(W):
    s = sum(np.asarray(W, dtype=object)[:, 1])
    if s == 0:
        raise NotDescartesError("invalid orientation sum")
    return 1 if s > 0 else -1


def validate_acc(W):
    """Check W^T Q_D W == Q_W exactly and classify the connected component."""
    W = _as_exact(W)
    if not np.array_equal(W.T @ Q_D @ W, Q_W):
        raise NotDescartesError("not a Descartes configuration")
    orientation = total_orientation(W)
    d = det(W)
    if abs(d) != 8:
        raise NotDescartesError("determinant {} is not +-8".format(d))
    return ConfigClass(1 if d > 0 else -1, orientation)


def is_valid_acc(W):
    try:
        validate_acc(W)
    except NotDescartesError:
        return False
    return True


_Q0 = exact([[0, 0, 0], [0, 2, 0], [0, 0, 2]])


def validate_ccm(M):
    M = exact(M)
    if M.shape != (4, 3):
        return False
    if all(v == 0 for v in M[:, 0]):
        return False
    return bool(np.array_equal(M.T @ Q_D @ M, _Q0))


def lift_ccm_to_acc(M):
    """Recover the unique ACC matrix whose last three columns are M.

    Passes to the Lorentz frame with J0, normalises the first row with an
    upper-triangular T, extends by the orthogonal block V, then undoes T on
    the first column so the result carries M rather than M T.
    """
    M = exact(M)
    if M.shape != (4, 3) or all(v == 0 for v in M[:, 0]):
        raise NotDescartesError("invalid CCM")
    Mt = J0 @ M
    m11, m12, m13 = Mt[0]
    if m11 == 0:
        raise NotDescartesError("inconsistent input")
    a, b, c = 1 / m11, -m12 / m11, -m13 / m11
    T = exact([[a, b, c], [0, 1, 0], [0, 0, 1]])
    N = Mt @ T
    # V = [N[1:, 0] | N[1:, 1:] / sqrt2] must be orthogonal
    col, block = N[1:, 0], N[1:, 1:]
    if not (sum(col * col) == 1
            and all(sum(col * block[:, k]) == 0 for k in range(2))
            and np.array_equal(block.T @ block, exact(2 * np.eye(2, dtype=int)))):
        raise NotDescartesError("invalid CCM")
    x = np.concatenate([[Fraction(2)], -2 * col]).astype(object)
    # first column for M instead of M T: a*x + N y with y = ((b^2+c^2)/a, -2b, -2c)
    y = np.array([(b * b + c * c) / a, -2 * b, -2 * c], dtype=object)
    u = a * x + N @ y
    Wt = np.column_stack([u, Mt]).astype(object)
    W = J0 @ Wt
    if not np.array_equal(W.T @ Q_D @ W, Q_W):
        raise NotDescartesError("invalid CCM")
    return W


def dual_configuration(W):
    return DUALITY @ _as_exact(W)


def descartes_circle_check(b):
    b = np.array([Fraction(v) for v in b], dtype=object)
    return bool(b @ Q_D @ b == 0)


def permute_rows(W, perm):
    """Row i of the result is row perm[i] of W (0-based)."""
    W = _as_exact(W)
    return W[list(perm)]


def reverse_orientation(W):
    return -_as_exact(W)


def canonical_unordered(W):
    """Key for the unordered, unoriented configuration: positive sum, sorted rows."""
    W = _as_exact(W)
    if total_orientation(W) < 0:
        W = -W
    return tuple(sorted(tuple(r) for r in W))


def pairwise_tangency_values(W):
    W = _as_exact(W)
    return {(i, j): tangency_value(W[i], W[j])
            for i, j in itertools.combinations_with_replacement(range(4), 2)}


def format_rational(x):
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else "{}/{}".format(x.numerator, x.denominator)


def parse_rational(v):
    if isinstance(v, bool) or not isinstance(v, (int, str)):
        raise ValueError("rational must be an integer or a 'p/q' string, got {!r}".format(v))
    return Fraction(v)


def config_to_json(W):
    return {"rows": [[format_rational(x) for x in row] for row in _as_exact(W)]}


def config_from_json(obj):
    if isinstance(obj, str):
        obj = json.loads(obj)
    rows = obj["rows"]
    if len(rows) != 4 or any(len(r) != 4 for r in rows):
        raise ValueError("configuration needs 4 rows of 4 entries")
    return np.array([[parse_rational(v) for v in r] for r in rows], dtype=object)
