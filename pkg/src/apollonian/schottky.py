"""The Schottky pair and the inversive generators attached to W_D0.

2x2 matrices are tuples ((a, b), (c, d)) of exact Gaussian rationals, so
trace and relation checks are identities, not approximations.  Limit-set
sampling pushes parabolic fixed points through reduced words in floating
point.
"""
from dataclasses import dataclass, field
import cmath
import csv
import io
import itertools
import math

import numpy as np

from .config import DUALITY, W_D0
from .gaussian import GaussRat, format_gauss
from .group import DepthCapError, Gen, depth_cap, generator_matrix
from .moebius import MoebiusElement, circle_inversion, right_action_matrix

__all__ = [
    "mat", "mul", "inv", "neg", "trace", "det", "commutator", "power",
    "schottky_generators", "inversive_generators", "check_relations",
    "fixed_point", "is_parabolic", "LimitSample", "sample_limit_set",
    "limit_sample_to_csv", "InversionReport", "verify_inversion_geometry",
    "to_moebius", "format_mat",
]

I_ = GaussRat(0, 1)


def mat(a, b, c, d):
    return ((GaussRat.coerce(a), GaussRat.coerce(b)), (GaussRat.coerce(c), GaussRat.coerce(d)))


def mul(X, Y):
    (a, b), (c, d) = X
    (e, f), (g, h) = Y
    return ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h))


def det(X):
    (a, b), (c, d) = X
    return a * d - b * c


def inv(X):
    (a, b), (c, d) = X
    k = det(X)
    return ((d / k, -b / k), (-c / k, a / k))


def neg(X):
    (a, b), (c, d) = X
    return ((-a, -b), (-c, -d))


def trace(X):
    return X[0][0] + X[1][1]


def power(X, n):
    out = mat(1, 0, 0, 1)
    base = X if n >= 0 else inv(X)
    for _ in range(abs(n)):
        out = mul(out, base)
    return out


def commutator(A, B):
    """[A, B] = A B A^{-1} B^{-1}."""
    return mul(mul(A, B), mul(inv(A), inv(B)))


def format_mat(X):
    return "[[{}, {}], [{}, {}]]".format(*(format_gauss(z) for row in X for z in row))


def schottky_generators():
    """The parabolic pair P1, P2 whose limit set is the residual set of W_D0."""
    P1 = mat(GaussRat(1, -1), 1, 1, GaussRat(1, 1))
    P2 = mat(1, 0, GaussRat(0, -2), 1)
    return P1, P2


def inversive_generators():
    """p1..p4 with s_i = p_i o conj the Apollonian reflections of D0."""
    p1 = mat(GaussRat(1, -1), -I_, I_, GaussRat(1, 1))
    p2 = mat(GaussRat(1, 1), -I_, I_, GaussRat(1, -1))
    p3 = mat(1, 0, GaussRat(0, 4), 1)
    p4 = mat(1, 0, 0, 1)
    return p1, p2, p3, p4


def is_parabolic(X):
    return det(X) == 1 and trace(X) in (GaussRat(2), GaussRat(-2))


def check_relations():
    """Name -> bool for every stated trace and relation identity."""
    P1, P2 = schottky_generators()
    p1, p2, p3, _ = inversive_generators()
    C = commutator(P1, P2)
    return {
        "det P1 = 1": det(P1) == 1,
        "det P2 = 1": det(P2) == 1,
        "tr P1 = 2": trace(P1) == 2,
        "tr P2 = 2": trace(P2) == 2,
        "[P1,P2] printed": C == mat(GaussRat(-1, -2), GaussRat(0, 2), GaussRat(0, -2), GaussRat(-1, 2)),
        "tr [P1,P2] = -2": trace(C) == -2,
        "p3 = P2^-2": p3 == power(P2, -2),
        "p1^-1 p2 = -P1^-2": mul(inv(p1), p2) == neg(power(P1, -2)),
        # s1 o s2 = p1 conj(p2) = p1 p2^-1 is the holomorphic element meant above
        "p1 p2^-1 = -P1^-2": mul(p1, inv(p2)) == neg(power(P1, -2)),
        "p2^2 = -[P1,P2]": mul(p2, p2) == neg(C),
    }


def fixed_point(X):
    """Fixed point of a parabolic matrix (None for infinity)."""
    (a, b), (c, d) = X
    if c == 0:
        return None
    return (a - d) / (c + c)


def to_moebius(X, conjugate=False):
    (a, b), (c, d) = X
    return MoebiusElement(a, b, c, d, conjugate=conjugate)


def _apply(X, z):
    (a, b), (c, d) = X
    return (a * z + b) / (c * z + d)


@dataclass
class LimitSample:
    points: np.ndarray
    words: list
    depth: int


# letters: a = P1, A = P1^{-1}, b = P2, B = P2^{-1}
_INVERSE = {"a": "A", "A": "a", "b": "B", "B": "b"}


def _reduced_words(n):
    if n == 0:
        return [""]
    out = []
    for w in _reduced_words(n - 1):
        for x in "ABab":
            if not w or _INVERSE[x] != w[0]:
                out.append(x + w)
    return sorted(out)


def sample_limit_set(depth, seeds=None, cap=None):
    """Images of ``seeds`` under every reduced word of length ``depth``.

    The default seeds are the fixed points of P1, P2 and [P1, P2]; each lies
    in the limit set, and so do all their images.  Words read right to
    left (the rightmost letter acts first); output is sorted by word.
    """
    cap = depth_cap(10) if cap is None else cap
    if depth > cap:
        raise DepthCapError("depth {} exceeds cap {}".format(depth, cap))
    P1, P2 = schottky_generators()
    if seeds is None:
        seeds = [complex(fixed_point(X)) for X in (P1, P2, commutator(P1, P2))]
    F = {k: np.array([[complex(z) for z in row] for row in X])
         for k, X in {"a": P1, "A": inv(P1), "b": P2, "B": inv(P2)}.items()}
    pts, words = [], []
    for w in _reduced_words(depth):
        M = np.eye(2, dtype=complex)
        for ch in w:
            M = M @ F[ch]
        for z in seeds:
            den = M[1, 0] * z + M[1, 1]
            if abs(den) < 1e-300:
                continue
            pts.append((M[0, 0] * z + M[0, 1]) / den)
            words.append(w)
    return LimitSample(np.array(pts, dtype=complex), words, depth)


def limit_sample_to_csv(sample):
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(["re", "im", "word"])
    for z, w in zip(sample.points, sample.words):
        wr.writerow(["{:.17g}".format(z.real), "{:.17g}".format(z.imag), w])
    return buf.getvalue()


def _proportional(X, Y):
    a = [z for row in X for z in row]
    b = [z for row in Y for z in row]
    return all(a[i] * b[j] == a[j] * b[i] for i, j in itertools.combinations(range(4), 2))


@dataclass
class InversionReport:
    ok: bool
    mapping: dict = field(default_factory=dict)  # s_i index -> dual row index (1-based)
    failures: list = field(default_factory=list)


def verify_inversion_geometry(W=W_D0, tol=1e-9):
    """Match each s_i = p_i o conj with inversion in a circle of D * W.

    For each i the report records the 1-based row k of the dual matrix whose
    inversion equals s_i, checks that points of that circle are fixed, and
    checks W @ R_{s_i} == S_k @ W exactly.
    """
    dual = DUALITY @ W
    rep = InversionReport(True)
    for i, p in enumerate(inversive_generators(), start=1):
        k = None
        for j in range(4):
            g = circle_inversion(dual[j])
            if _proportional(p, ((g.a, g.b), (g.c, g.d))):
                k = j + 1
                break
        if k is None:
            rep.ok = False
            rep.failures.append("s{} is not inversion in any dual circle".format(i))
            continue
        rep.mapping[i] = k
        s = to_moebius(p, conjugate=True)
        bbar, b, w1, w2 = (float(v) for v in dual[k - 1])
        for t in range(8):
            if b:
                z = complex(w1, w2) / b + cmath.exp(2j * math.pi * t / 8) / abs(b)
            else:
                n = complex(w1, w2)
                z = n * bbar / 2 + 1j * n * (t - 4)
            if abs(s(z) - z) > tol * max(1.0, abs(z)):
                rep.ok = False
                rep.failures.append("s{} moves a point of dual circle {}".format(i, k))
                break
        if not np.array_equal(W @ right_action_matrix(s), generator_matrix(Gen(k, False)) @ W):
            rep.ok = False
            rep.failures.append("s{} does not act as S{}".format(i, k))
    return rep
