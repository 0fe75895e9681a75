"""Apollonian, dual Apollonian and super-Apollonian groups.

A word is a tuple of :class:`Gen` written as a matrix product
``U = U_n ... U_1``: the rightmost letter acts first on a configuration.
Strings use ``1..4`` for S_i and a trailing prime for the dual generator,
so ``"12'3"`` is ``S1 @ S2perp @ S3``.
"""
from typing import NamedTuple
import os
import re

import numpy as np

from .forms import Q_D, exact, identity

__all__ = [
    "Gen", "GENERATORS", "APOLLONIAN", "DUAL", "generator_matrix",
    "word_to_matrix", "parse_word", "format_word", "is_normal_form",
    "normal_form", "next_letters", "enumerate_normal_forms",
    "enumerate_reduced_words", "row_sums", "size", "row_sum_invariants",
    "conjugate_by_duality", "normal_form_count", "depth_cap", "DepthCapError",
]


class DepthCapError(ValueError):
    pass


def depth_cap(default):
    """Enumeration cap, overridable through APOLLONIAN_DEPTH_CAP."""
    env = os.environ.get("APOLLONIAN_DEPTH_CAP")
    return int(env) if env else default


class Gen(NamedTuple):
    index: int  # 1..4
    dual: bool = False

    def __str__(self):
        return "{}{}".format(self.index, "'" if self.dual else "")


APOLLONIAN = tuple(Gen(i) for i in range(1, 5))
DUAL = tuple(Gen(i, True) for i in range(1, 5))
GENERATORS = APOLLONIAN + DUAL


def _s(i):
    m = np.eye(4, dtype=int)
    m[i - 1] = 2
    m[i - 1, i - 1] = -1
    return exact(m)


_MATRICES = {g: (_s(g.index).T if g.dual else _s(g.index)) for g in GENERATORS}
for _m in _MATRICES.values():
    _m.flags.writeable = False


def generator_matrix(g):
    return _MATRICES[g].copy()


def word_to_matrix(word):
    U = identity()
    for g in word:
        U = U @ _MATRICES[g]
    return U


_TOKEN = re.compile(r"([1-4])('?)")


def parse_word(s):
    s = s.strip()
    pos, word = 0, []
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if not m:
            raise ValueError("malformed word {!r} at position {}".format(s, pos))
        word.append(Gen(int(m.group(1)), bool(m.group(2))))
        pos = m.end()
    return tuple(word)


def format_word(word):
    return "".join(str(g) for g in word)


def _forbidden(left, right):
    """True if ``left`` may not appear immediately left of ``right`` in normal form."""
    if left == right:
        return True
    return left.dual and not right.dual and left.index != right.index


def is_normal_form(word):
    return not any(_forbidden(l, r) for l, r in zip(word, word[1:]))


def normal_form(word):
    """Reduce with S^2 = I and S_i S_j' = S_j' S_i (i != j), pushing duals rightward."""
    w = list(word)
    changed = True
    while changed:
        changed = False
        k = len(w) - 2
        while k >= 0:
            if k + 1 < len(w) and w[k] == w[k + 1]:
                del w[k:k + 2]
                changed = True
                k = min(k, len(w) - 2)
                continue
            if k + 1 < len(w) and _forbidden(w[k], w[k + 1]):
                w[k], w[k + 1] = w[k + 1], w[k]
                changed = True
            k -= 1
    return tuple(w)


def next_letters(last, alphabet=GENERATORS):
    """Letters that may be prepended to a normal-form word whose leftmost letter is ``last``."""
    if last is None:
        return list(alphabet)
    return [g for g in alphabet if not _forbidden(g, last)]


def normal_form_count(n):
    return 9 * 5 ** (n - 1) - 1


def _enumerate(n, alphabet, cap):
    if n < 0:
        raise ValueError("length must be non-negative")
    if n > cap:
        raise DepthCapError("length {} exceeds cap {}".format(n, cap))
    level = [()]
    for _ in range(n):
        level = [(g,) + w for w in level
                 for g in next_letters(w[0] if w else None, alphabet)]
    return sorted(level, key=lambda w: [(g.dual, g.index) for g in w])


def enumerate_normal_forms(n, cap=None):
    """All normal-form words of length exactly ``n`` over the eight generators."""
    if n < 1:
        raise ValueError("n must be positive")
    return _enumerate(n, GENERATORS, depth_cap(8) if cap is None else cap)


def enumerate_reduced_words(n, alphabet=APOLLONIAN, cap=None):
    """Words of length ``n`` over a single family with no adjacent repeats."""
    return _enumerate(n, alphabet, depth_cap(12) if cap is None else cap)


_ONES = np.ones(4, dtype=int)


def row_sums(U):
    return U @ _ONES


def size(U):
    return sum(row_sums(U))


def row_sum_invariants(word):
    """Check the row-sum invariants that make normal-form words nontrivial.

    Returns a list of human-readable violations; empty means all hold.
    """
    if not word or not is_normal_form(word):
        raise ValueError("need a nonempty normal-form word")
    problems = []
    previous = None
    # suffixes U_k ... U_1 in order of growing length
    for k in range(len(word) - 1, -1, -1):
        suffix = word[k:]
        U = word_to_matrix(suffix)
        r = list(row_sums(U))
        f = sum(r)
        tag = format_word(suffix)
        for i in range(4):
            for j in range(i + 1, 4):
                if r[i] + r[j] <= 0:
                    problems.append("{}: r{}+r{} = {}".format(tag, i + 1, j + 1, r[i] + r[j]))
        h = suffix[0].index - 1
        if suffix[0].dual:
            if r[h] >= 0:
                problems.append("{}: r{} = {} not negative".format(tag, h + 1, r[h]))
        elif r[h] <= 0:
            problems.append("{}: r{} = {} not positive".format(tag, h + 1, r[h]))
        for i in range(4):
            if i != h and r[i] >= f - r[i]:
                problems.append("{}: r{} = {} not below the other three".format(tag, i + 1, r[i]))
        if f < 8:
            problems.append("{}: f = {} < 8".format(tag, f))
        if previous is not None and f <= previous:
            problems.append("{}: f = {} does not exceed {}".format(tag, f, previous))
        previous = f
    return problems


def conjugate_by_duality(U):
    D = -Q_D
    return D.T @ U @ D

