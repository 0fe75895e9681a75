"""Packings as orbits of a seed configuration under the integer groups.

Configurations are generated breadth-first over reduced (Apollonian, dual)
or normal-form (super) words.  Circles are deduplicated by an exact,
orientation-free key; geometric checks run in floating point.
"""
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
import csv
import io
import itertools
import logging
import math

import numpy as np

from .circle import circle_key, tangency_point
from .config import (canonical_unordered, config_from_json, config_to_json,
                     format_rational, parse_rational, total_orientation,
                     validate_acc)
from .forms import is_integral
from .group import (APOLLONIAN, DUAL, GENERATORS, DepthCapError, depth_cap,
                    format_word, next_letters, parse_word)

log = logging.getLogger(__name__)

__all__ = [
    "PackingKind", "CircleRecord", "Packing", "Report", "Spectrum",
    "ResidualSample", "apply_generator", "generate", "new_circle_curvature",
    "check_disjoint_interiors", "check_no_crossing", "orbit_distinctness",
    "curvature_spectrum", "is_strongly_integral", "first_column_integral",
    "strong_integrality_propagation", "tangency_points", "residual_membership",
    "residual_membership_many", "estimate_residual_dimension", "complete_curvatures", "fit_power_law",
    "packing_to_json", "packing_from_json", "spectrum_to_csv", "float_rows",
]


class PackingKind(Enum):
    APOLLONIAN = "apollonian"
    DUAL = "dual"
    SUPER = "super"

    @property
    def alphabet(self):
        return {PackingKind.APOLLONIAN: APOLLONIAN,
                PackingKind.DUAL: DUAL,
                PackingKind.SUPER: GENERATORS}[self]


@dataclass
class CircleRecord:
    row: tuple
    word: tuple
    level: int


@dataclass
class Packing:
    seed: np.ndarray
    kind: PackingKind
    depth: int
    configs: list = field(default_factory=list)  # (word, W) pairs, BFS order
    circles: dict = field(default_factory=dict)  # circle_key -> CircleRecord

    def rows(self):
        return [rec.row for rec in self.circles.values()]

    def level_counts(self):
        c = Counter(rec.level for rec in self.circles.values())
        return [c.get(m, 0) for m in range(self.depth + 1)]

    def __len__(self):
        return len(self.circles)


@dataclass
class Report:
    ok: bool
    checked: int = 0
    failures: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def __bool__(self):
        return self.ok


def apply_generator(g, W):
    """Left action of one generator, done with row operations."""
    j = g.index - 1
    out = W.copy()
    if g.dual:
        r = W[j]
        for k in range(4):
            out[k] = -r if k == j else W[k] + 2 * r
    else:
        out[j] = 2 * (W[0] + W[1] + W[2] + W[3]) - 3 * W[j]
    return out


def generate(seed, kind=PackingKind.APOLLONIAN, depth=3, cap=None):
    kind = PackingKind(kind)
    cap = depth_cap(12) if cap is None else cap
    if depth > cap:
        raise DepthCapError("depth {} exceeds cap {}".format(depth, cap))
    cls = validate_acc(seed)
    seed = np.asarray(seed, dtype=object)
    if kind is PackingKind.APOLLONIAN and cls.orientation < 0:
        log.warning("seed is negatively oriented; generating from its reversal")
        seed = -seed
    p = Packing(seed=seed, kind=kind, depth=depth)

    def add(row, word, level):
        key = circle_key(row)
        if key not in p.circles:
            p.circles[key] = CircleRecord(tuple(row), word, level)
            return True
        return False

    p.configs.append(((), seed))
    for row in seed:
        add(row, (), 0)
    frontier = [((), seed)]
    for level in range(1, depth + 1):
        nxt = []
        for word, W in frontier:
            for g in next_letters(word[0] if word else None, kind.alphabet):
                child = apply_generator(g, W)
                w = (g,) + word
                nxt.append((w, child))
                new = [add(row, w, level) for row in child]
                if kind is PackingKind.APOLLONIAN and new != [k == g.index - 1 for k in range(4)]:
                    raise RuntimeError("word {} did not add exactly one new circle".format(format_word(w)))
        p.configs.extend(nxt)
        frontier = nxt
    return p


def new_circle_curvature(W, i):
    """Curvature of the circle that replaces circle ``i`` (1-based) under S_i."""
    b = [Fraction(v) for v in np.asarray(W, dtype=object)[:, 1]]
    return 2 * (sum(b) - b[i - 1]) - b[i - 1]


def float_rows(rows):
    if isinstance(rows, Packing):
        rows = rows.rows()
    return np.array([[float(v) for v in r] for r in rows], dtype=float).reshape(-1, 4)


def _split(rows):
    """Float geometry: (circle indices, centers, signed radii), (line indices, normals, offsets)."""
    R = float_rows(rows)
    circ = np.nonzero(R[:, 1] != 0)[0]
    lines = np.nonzero(R[:, 1] == 0)[0]
    b = R[circ, 1]
    centers = R[circ, 2:] / b[:, None]
    return R, circ, centers, 1 / b, lines, R[lines, 2:], R[lines, 0] / 2


def _pairs(n):
    return np.triu_indices(n, k=1)


def check_disjoint_interiors(p, tol=1e-9):
    """Pairwise check that oriented interiors never overlap.

    ``p`` may be a :class:`Packing` or a sequence of rows.  The tolerance is
    relative to the pair's size, max(1, distance, |r1| + |r2|).
    """
    R, circ, c, r, lines, n, m = _split(p)
    failures = []
    i, j = _pairs(len(circ))
    d = np.hypot(*(c[i] - c[j]).T)
    ri, rj = r[i], r[j]
    eps = tol * np.maximum.reduce([np.ones_like(d), d, np.abs(ri) + np.abs(rj)])
    both_pos = (ri > 0) & (rj > 0)
    gap = np.where(both_pos, d - ri - rj,
                   np.where(ri < 0, -ri - d - rj, -rj - d - ri))
    bad = (gap < -eps) | ((ri < 0) & (rj < 0))
    failures += [(int(circ[a]), int(circ[b])) for a, b in zip(i[bad], j[bad])]
    for li, normal, off in zip(lines, n, m):
        proj = c @ normal
        # circle disk must sit in normal . p <= off
        gap = off - proj - r
        eps = tol * np.maximum(1.0, np.abs(proj) + np.abs(r))
        bad = (r < 0) | (gap < -eps)
        failures += [(int(li), int(k)) for k in circ[bad]]
    for (a, na, ma), (b, nb, mb) in itertools.combinations(zip(lines, n, m), 2):
        if not (np.allclose(na, -nb, atol=tol) and ma + mb >= -tol):
            failures.append((int(a), int(b)))
    total = len(R) * (len(R) - 1) // 2
    return Report(not failures, total, failures)


def check_no_crossing(p, tol=1e-9):
    """Pairwise check that no two (unoriented) circles cross transversally."""
    R, circ, c, r, lines, n, m = _split(p)
    failures = []
    i, j = _pairs(len(circ))
    d = np.hypot(*(c[i] - c[j]).T)
    ri, rj = np.abs(r[i]), np.abs(r[j])
    eps = tol * np.maximum.reduce([np.ones_like(d), d, ri + rj])
    bad = (d > np.abs(ri - rj) + eps) & (d < ri + rj - eps)
    failures += [(int(circ[a]), int(circ[b])) for a, b in zip(i[bad], j[bad])]
    for li, normal, off in zip(lines, n, m):
        dist = np.abs(c @ normal - off)
        eps = tol * np.maximum(1.0, np.abs(r))
        bad = dist < np.abs(r) - eps
        failures += [(int(li), int(k)) for k in circ[bad]]
    for (a, na, _), (b, nb, _) in itertools.combinations(zip(lines, n, m), 2):
        if abs(na[0] * nb[1] - na[1] * nb[0]) > tol:
            failures.append((int(a), int(b)))
    total = len(R) * (len(R) - 1) // 2
    return Report(not failures, total, failures)


_PERMUTATIONS = list(itertools.permutations(range(4)))


def orbit_distinctness(p):
    """Orbit structure of an Apollonian packing.

    (a) reduced words map injectively to unordered, unoriented
    configurations; (b) the 48 seeds P_sigma (+-I) W generate orbits with the
    same unordered content and pairwise disjoint ordered-oriented content.
    """
    if p.kind is not PackingKind.APOLLONIAN:
        raise ValueError("orbit structure is defined for Apollonian packings")
    failures = []
    keys = [canonical_unordered(W) for _, W in p.configs]
    unordered = set(keys)
    if len(unordered) != len(keys):
        dup = [format_word(w) for (w, _), k in zip(p.configs, keys) if keys.count(k) > 1]
        failures.append(("duplicate unordered configurations", dup[:10]))
    oriented = set()
    n_oriented = 0
    for perm in _PERMUTATIONS:
        for sign in (1, -1):
            seed = sign * p.seed[list(perm)]
            orbit = _orbit(seed, p.depth)
            n_oriented += len(orbit)
            oriented.update(tuple(map(tuple, W)) for W in orbit)
            if {canonical_unordered(W) for W in orbit} != unordered:
                failures.append(("orbit content differs", perm, sign))
    details = {"unordered": len(unordered), "words": len(keys),
               "oriented": len(oriented), "oriented_total": n_oriented}
    if len(oriented) != 48 * len(unordered):
        failures.append(("oriented count", len(oriented), 48 * len(unordered)))
    return Report(not failures, len(keys), failures, details)


def _orbit(seed, depth, alphabet=APOLLONIAN):
    out = [seed]
    frontier = [((), seed)]
    for _ in range(depth):
        nxt = [((g,) + w, apply_generator(g, W)) for w, W in frontier
               for g in next_letters(w[0] if w else None, alphabet)]
        out.extend(W for _, W in nxt)
        frontier = nxt
    return out


@dataclass
class Spectrum:
    counts: list  # (curvature, multiplicity), ascending
    integral: bool

    def multiset(self):
        return Counter(dict(self.counts))


def curvature_spectrum(p):
    rows = p.rows() if isinstance(p, Packing) else p
    c = Counter(Fraction(r[1]) for r in rows)
    items = sorted(c.items())
    return Spectrum(items, all(k.denominator == 1 for k, _ in items))


def is_strongly_integral(W):
    """Curvatures and curvature*centers (columns 2-4) are all integers."""
    return is_integral(np.asarray(W, dtype=object)[:, 1:])


def first_column_integral(W):
    return is_integral(np.asarray(W, dtype=object)[:, :1])


def strong_integrality_propagation(seed, depth, kind=PackingKind.SUPER):
    if not (is_strongly_integral(seed) and first_column_integral(seed)):
        raise ValueError("seed is not an integer matrix")
    seed = np.asarray(seed, dtype=object)
    configs = _orbit(seed, depth, PackingKind(kind).alphabet)
    bad = [W for W in configs if not is_integral(W)]
    return Report(not bad, len(configs), bad[:5])


@dataclass
class ResidualSample:
    points: list  # exact (x, y) pairs from tangencies inside configurations
    cross_config: list = field(default_factory=list)  # float points found geometrically


def tangency_points(p, geometric=False, tol=1e-9):
    """Tangency points of the packing.

    Points from pairs inside a stored configuration are exact; the point at
    infinity shared by two lines is omitted.  With
    ``geometric=True`` tangent pairs between arbitrary stored circles are
    also searched numerically and the extra points reported separately.
    """
    seen = {}
    for _, W in p.configs:
        for a, b in itertools.combinations(range(4), 2):
            try:
                pt = tangency_point(W[a], W[b])
            except ValueError:
                continue
            seen.setdefault(pt, None)
    sample = ResidualSample(list(seen))
    if geometric:
        R, circ, c, r, _, _, _ = _split(p)
        i, j = _pairs(len(circ))
        d = np.hypot(*(c[i] - c[j]).T)
        ri, rj = np.abs(r[i]), np.abs(r[j])
        eps = tol * np.maximum.reduce([np.ones_like(d), d, ri + rj])
        tangent = (np.abs(d - ri - rj) < eps) | (np.abs(d - np.abs(ri - rj)) < eps)
        known = {(round(float(x), 9), round(float(y), 9)) for x, y in sample.points}
        for a, b in zip(i[tangent], j[tangent]):
            ra, rb, dab = abs(r[a]), abs(r[b]), np.hypot(*(c[b] - c[a]))
            if dab < tol:
                continue  # concentric or repeated: no single tangency point
            if rb > ra:
                a, b, ra, rb = b, a, rb, ra
            # external tangency: step ra from c[a] towards c[b]; internal: the
            # smaller circle sits inside, the point is still ra along that ray
            pt = c[a] + (c[b] - c[a]) * (ra / dab)
            k = (round(pt[0], 9), round(pt[1], 9))
            if k not in known:
                known.add(k)
                sample.cross_config.append(tuple(pt))
    return sample


def residual_membership_many(points, p, tol=1e-6):
    """Vectorised membership: True where a point is in no open oriented interior.

    ``points`` is an (n, 2) array or a complex array.

    A point is inside circle (b, w) when sign(b) * (1 - |b p - w|) > tol,
    i.e. the distance test measured in units of that circle's radius, and
    inside a line when normal . p - offset > tol.
    """
    R = float_rows(p)
    pts = np.asarray(points)
    if np.iscomplexobj(pts):
        pts = np.stack([pts.real, pts.imag], axis=-1)
    pts = np.asarray(pts, dtype=float).reshape(-1, 2)
    inside = np.zeros(len(pts), dtype=bool)
    circ = R[R[:, 1] != 0]
    lines = R[R[:, 1] == 0]
    for chunk in range(0, len(circ), 2048):
        C = circ[chunk:chunk + 2048]
        b, w = C[:, 1], C[:, 2:]
        dist = np.hypot(pts[:, None, 0] * b - w[:, 0], pts[:, None, 1] * b - w[:, 1])
        inside |= (np.sign(b) * (1 - dist) > tol).any(axis=1)
    for L in lines:
        inside |= pts @ L[2:] - L[0] / 2 > tol
    return ~inside


def residual_membership(point, p, tol=1e-6):
    return bool(residual_membership_many([point], p, tol)[0])


def fit_power_law(x, y):
    """Least-squares slope of log y against log x."""
    slope, _ = np.polyfit(np.log(x), np.log(y), 1)
    return float(slope)


def complete_curvatures(p, t_max, max_nodes=20_000_000):
    """Curvatures of every circle of the full packing with curvature <= t_max.

    Continues the word tree below the last stored level, pruning branches
    whose new circle exceeds ``t_max``; in a positively oriented packing a
    child circle is never larger than the circle it descends from, so the
    pruning is exact.  Works on curvature vectors only, in float64.
    """
    if any(r[1] == 0 for r in p.rows()):
        raise ValueError("packing contains a line; its curvature counting function is infinite")
    frontier = [(w, W) for w, W in p.configs if len(w) == p.depth]
    if not frontier:
        raise ValueError("packing has no stored configurations to continue from")
    out = [np.array([float(r[1]) for r in p.rows()])]
    B = np.array([[float(v) for v in W[:, 1]] for _, W in frontier])
    last = np.array([w[0].index - 1 if w else -1 for w, _ in frontier])
    total = 0
    while len(B):
        s = B.sum(axis=1)
        kids, kid_last = [], []
        for i in range(4):
            keep = last != i
            nb = 2 * (s[keep] - B[keep, i]) - B[keep, i]
            ok = nb <= t_max
            child = B[keep][ok].copy()
            child[:, i] = nb[ok]
            kids.append(child)
            kid_last.append(np.full(len(child), i))
            out.append(nb[ok])
        B, last = np.concatenate(kids), np.concatenate(kid_last)
        total += len(B)
        if total > max_nodes:
            raise ValueError("curvature bound {} needs more than {} circles".format(t_max, max_nodes))
    curv = np.sort(np.concatenate(out))
    return curv[curv <= t_max]


def estimate_residual_dimension(p, t_max=1e5, decades=2.0, min_circles=10_000, points=60):
    """Exponent of the counting function N(T) = #{circles with curvature <= T}.

    For a :class:`Packing` with stored configurations N(T) is made exact up
    to ``t_max`` (see :func:`complete_curvatures`) and the slope is fitted
    over the top ``decades`` decades below ``t_max``.  For a bare sequence
    of curvatures, the values are taken as complete and the fit runs from
    ten times the smallest to the largest.
    """
    if isinstance(p, Packing):
        if len(p) < min_circles:
            raise ValueError("need at least {} circles, have {}".format(min_circles, len(p)))
        curv = complete_curvatures(p, t_max)
        lo, hi = t_max / 10 ** decades, t_max
    else:
        curv = np.sort(np.abs(np.asarray(p, dtype=float)))
        curv = curv[curv > 0]
        if len(curv) < min_circles:
            raise ValueError("need at least {} circles, have {}".format(min_circles, len(curv)))
        lo, hi = curv[0] * 10, curv[-1]
    if hi <= lo * 3:
        raise ValueError("curvature range [{:.3g}, {:.3g}] too short to fit".format(lo, hi))
    T = np.geomspace(lo, hi, points)
    N = np.searchsorted(curv, T, side="right")
    return fit_power_law(T, N)


def packing_to_json(p):
    return {
        "seed": config_to_json(p.seed)["rows"],
        "kind": p.kind.value,
        "depth": p.depth,
        "circles": [
            {"key": [format_rational(v) for v in key],
             "cobar": format_rational(rec.row[0]),
             "b": format_rational(rec.row[1]),
             "w1": format_rational(rec.row[2]),
             "w2": format_rational(rec.row[3]),
             "word": format_word(rec.word),
             "level": rec.level}
            for key, rec in p.circles.items()
        ],
    }


def packing_from_json(obj):
    """Load an exported packing; configurations are not stored in the export."""
    seed = config_from_json({"rows": obj["seed"]})
    p = Packing(seed=seed, kind=PackingKind(obj["kind"]), depth=int(obj["depth"]))
    for c in obj["circles"]:
        row = tuple(parse_rational(c[k]) for k in ("cobar", "b", "w1", "w2"))
        p.circles[circle_key(row)] = CircleRecord(row, parse_word(c["word"]), int(c["level"]))
    return p


def spectrum_to_csv(spectrum):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["curvature", "count"])
    for k, n in spectrum.counts:
        w.writerow([format_rational(k), n])
    return buf.getvalue()
