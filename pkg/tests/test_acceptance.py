"""The twelve acceptance criteria, each at its stated tolerance.

Every test prints one line "criterion N: PASS|FAIL  <detail>" with output
capture disabled, so the lines appear in a plain ``pytest -v`` log.  Run
this file directly (``python3 tests/test_acceptance.py``) for just the
twelve lines.
"""
import time

import numpy as np
import pytest

from apollonian.circle import acc_to_geometry, circle_to_acc
from apollonian.config import DUALITY, W_D0, lift_ccm_to_acc, total_orientation, validate_acc
from apollonian.forms import A, J0, Q_D, Q_L, Q_W, W0, congruence, det, identity, is_automorph, matmul
from apollonian.gaussian import GaussRat
from apollonian.group import (APOLLONIAN, DUAL, GENERATORS, Gen, enumerate_normal_forms,
                              generator_matrix, row_sum_invariants, word_to_matrix)
from apollonian.moebius import (MoebiusElement, apply_moebius, conjugation_matrix,
                                dilation_matrix, moebius_to_autqw, random_moebius,
                                translation_matrix, wilker_lorentz_map)
from apollonian.packing import (PackingKind, check_disjoint_interiors, check_no_crossing,
                                curvature_spectrum, estimate_residual_dimension, generate,
                                orbit_distinctness, residual_membership_many,
                                strong_integrality_propagation, tangency_points)
from apollonian.schottky import (commutator, inv, inversive_generators, mul, neg, power,
                                 sample_limit_set, schottky_generators, trace)


def _best_time(fn, repeat=20):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def _perturb(rows, index, factor=1.01, shift=0):
    rows = list(rows)
    c = acc_to_geometry(rows[index])
    (x, y), r = c.center, c.radius
    rows[index] = circle_to_acc((x + shift * r, y), r * factor)
    return rows


def criterion_1():
    def check():
        return (np.array_equal(matmul(J0.T, Q_L, J0), Q_D)
                and np.array_equal(matmul(A.T, Q_L, A), Q_W)
                and det(Q_D) == -1 and det(Q_W) == -64
                and np.array_equal(matmul(Q_D, Q_D), identity()))
    ok = check()
    t = _best_time(check)
    return ok and t < 1e-3, "identities {}, {:.3f} ms".format("exact" if ok else "WRONG", t * 1e3)


def criterion_2():
    parts = []
    for name, W in (("W0", W0), ("W_D0", W_D0)):
        valid = np.array_equal(congruence(W, Q_D), Q_W) and det(W) in (8, -8)
        lifted = np.array_equal(lift_ccm_to_acc(W[:, 1:]), W)
        parts.append((name, valid, lifted))
    ok = all(v and l for _, v, l in parts)
    return ok, "; ".join("{} valid={} lift={}".format(*p) for p in parts)


def criterion_3():
    def check():
        mats = [generator_matrix(g) for g in GENERATORS]
        aut = all(is_automorph(M, Q_D) for M in mats)
        transpose = all(np.array_equal(generator_matrix(Gen(i, True)), generator_matrix(Gen(i)).T)
                        for i in range(1, 5))
        duality = all(np.array_equal(matmul(DUALITY.T, generator_matrix(Gen(i)), DUALITY),
                                     generator_matrix(Gen(i, True))) for i in range(1, 5))
        I = identity()
        involution = all(np.array_equal(matmul(M, M), I) for M in mats)
        mixed = all(np.array_equal(matmul(*[generator_matrix(Gen(i)), generator_matrix(Gen(j, True))] * 2), I)
                    for i in range(1, 5) for j in range(1, 5) if i != j)
        return aut, transpose, duality, involution and mixed
    res = check()
    t = _best_time(check, repeat=5)
    return all(res) and t < 1e-2, "aut={} transpose={} duality={} coxeter={}, {:.2f} ms".format(*res, t * 1e3)


def criterion_4():
    counts, keys, problems = [], set(), 0
    for n in range(1, 5):
        words = enumerate_normal_forms(n)
        counts.append(len(words))
        for w in words:
            keys.add(tuple(int(x) for x in word_to_matrix(w).flat))
            problems += len(row_sum_invariants(w))
    total = sum(counts)
    ok = counts == [9 * 5 ** (n - 1) - 1 for n in range(1, 5)] == [8, 44, 224, 1124] \
        and len(keys) == total and problems == 0
    return ok, "counts {}, {} distinct matrices of {}, {} invariant violations".format(
        counts, len(keys), total, problems)


def criterion_5():
    t = time.perf_counter()
    counts = [len(generate(W_D0, PackingKind.APOLLONIAN, m)) for m in range(7)]
    t = time.perf_counter() - t
    ok = counts == [2 * (3 ** m + 1) for m in range(7)] == [4, 8, 20, 56, 164, 488, 1460]
    return ok and t < 1.0, "counts {}, {:.2f} s".format(counts, t)


def criterion_6():
    reps = [strong_integrality_propagation(s, 4, PackingKind.SUPER) for s in (W0, W_D0)]
    spectrum = curvature_spectrum(generate(W_D0, PackingKind.APOLLONIAN, 2))
    m = spectrum.multiset()
    need = {-1: 1, 2: 2, 3: 2, 6: 2, 15: 1}
    contains = all(m[k] >= n for k, n in need.items())
    ok = all(r.ok for r in reps) and spectrum.integral and contains
    return ok, "integral configs {} and {}, spectrum integral={} contains {{-1,2,2,3,3,6,6,15}}={}".format(
        reps[0].checked, reps[1].checked, spectrum.integral, contains)


def criterion_7():
    parts = {}
    for name, seed in (("W0", W0), ("W_D0", W_D0)):
        parts["apollonian " + name] = check_disjoint_interiors(generate(seed, PackingKind.APOLLONIAN, 4), tol=1e-9).ok
        for kind in (PackingKind.DUAL, PackingKind.SUPER):
            parts["{} {}".format(kind.value, name)] = check_no_crossing(generate(seed, kind, 3), tol=1e-9).ok
    ap = generate(W_D0, PackingKind.APOLLONIAN, 3).rows()
    k = next(i for i, r in enumerate(ap) if r[1] == 3)
    neg1 = not check_disjoint_interiors(_perturb(ap, k), tol=1e-9).ok
    du = generate(W_D0, PackingKind.DUAL, 3).rows()
    k = next(i for i, r in enumerate(du) if r[1] > 0)
    neg2 = not check_no_crossing(_perturb(du, k, factor=1, shift=0.5), tol=1e-9).ok
    ok = all(parts.values()) and neg1 and neg2
    return ok, "{} packings pass, negative controls fail: {}".format(sum(parts.values()), neg1 and neg2)


def criterion_8():
    rep = orbit_distinctness(generate(W0, PackingKind.APOLLONIAN, 2))
    d = rep.details
    ok = rep.ok and d["oriented"] == 48 * d["unordered"]
    return ok, "oriented {} = 48 x {}".format(d["oriented"], d["unordered"])


def criterion_9(packing=None):
    p = packing if packing is not None else generate(W_D0, PackingKind.APOLLONIAN, 9)
    est = estimate_residual_dimension(p)
    synthetic = estimate_residual_dimension(np.arange(1, 200_001) ** (2 / 3))
    ok = 1.25 <= est <= 1.36 and abs(synthetic - 1.5) <= 0.01
    return ok, "estimate {:.4f} in [1.25, 1.36], synthetic T^1.5 -> {:.4f}".format(est, synthetic)


def criterion_10():
    rng = np.random.default_rng(10)
    homo = 0
    for k in range(50):
        g = random_moebius(rng, conjugate=k % 3 == 0)
        h = random_moebius(rng, conjugate=k % 5 == 0)
        lhs = np.asarray(moebius_to_autqw(g * h), dtype=float)
        rhs = np.asarray(moebius_to_autqw(g), dtype=float) @ np.asarray(moebius_to_autqw(h), dtype=float)
        homo += np.allclose(lhs, rhs, rtol=0, atol=1e-9 * max(1.0, np.abs(rhs).max()))
    preserve = 0
    for k in range(20):
        g = random_moebius(rng, scale=1.0, conjugate=k % 2 == 1)
        W = W_D0 if k % 2 else W0
        out = apply_moebius(g, W)  # re-validates within 1e-9 or raises
        preserve += np.sign(out[:, 1].astype(float).sum()) == total_orientation(W)
    e = lambda v: np.array([v], dtype=object)
    rows = [
        (e([1, 1, 1, 1]) @ translation_matrix(1))[0].tolist() == [4, 1, 2, 1],
        (e([0, 2, 0, 1]) @ translation_matrix(GaussRat(0, 1)))[0].tolist() == [4, 2, 0, 3],
        (e([1, 1, 1, 1]) @ dilation_matrix(2))[0].tolist() == [2, 0.5, 1, 1],
        (e([0, 2, 0, 1]) @ dilation_matrix(GaussRat(0, 1)))[0].tolist() == [0, 2, -1, 0],
        (e([0, 2, 0, 1]) @ conjugation_matrix())[0].tolist() == [0, 2, 0, -1],
    ]
    QL = Q_L.astype(float)
    lorentz = 0
    for _ in range(50):
        L = wilker_lorentz_map(random_moebius(rng))
        lorentz += (np.allclose(L.T @ QL @ L, QL, rtol=0, atol=1e-9 * np.abs(L).max() ** 2)
                    and np.linalg.det(L) > 0 and L[0, 0] > 0)
    ok = homo == 50 and preserve == 20 and all(rows) and lorentz == 50
    return ok, "homomorphism {}/50, orientation kept {}/20, row examples {}/5, proper orthochronous {}/50".format(
        homo, preserve, sum(rows), lorentz)


def criterion_11(packing=None):
    P1, P2 = schottky_generators()
    p1, p2, p3, _ = inversive_generators()
    C = commutator(P1, P2)
    traces = (trace(P1), trace(P2), trace(C)) == (2, 2, -2)
    rel = {
        "p3 = P2^-2": p3 == power(P2, -2),
        "p1^-1 p2 = -P1^-2": mul(inv(p1), p2) == neg(power(P1, -2)),
        "p2^2 = -[P1,P2]": mul(p2, p2) == neg(C),
    }
    p = packing if packing is not None else generate(W_D0, PackingKind.APOLLONIAN, 8)
    frac = residual_membership_many(sample_limit_set(6).points, p, tol=1e-6).mean()
    ok = traces and all(rel.values()) and frac >= 0.99
    failed = [k for k, v in rel.items() if not v]
    return ok, "traces exact={}, relations failing: {}, limit membership {:.1%}".format(
        traces, ", ".join(failed) or "none", frac)


def criterion_12(packing=None):
    pts = tangency_points(generate(W_D0, PackingKind.DUAL, 3)).points
    p = packing if packing is not None else generate(DUALITY @ W_D0, PackingKind.APOLLONIAN, 8)
    inside = residual_membership_many(np.array(pts, dtype=float), p, tol=1e-6)
    return bool(inside.all()), "{}/{} tangency points in the residual set ({} circles)".format(
        int(inside.sum()), len(pts), len(p))


def report(n, result):
    ok, detail = result
    line = "criterion {}: {}  {}".format(n, "PASS" if ok else "FAIL", detail)
    return ok, line


def _run(capsys, n, result):
    ok, line = report(n, result)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


def test_criterion_1(capsys):
    _run(capsys, 1, criterion_1())


def test_criterion_2(capsys):
    _run(capsys, 2, criterion_2())


def test_criterion_3(capsys):
    _run(capsys, 3, criterion_3())


def test_criterion_4(capsys):
    _run(capsys, 4, criterion_4())


def test_criterion_5(capsys):
    _run(capsys, 5, criterion_5())


def test_criterion_6(capsys):
    _run(capsys, 6, criterion_6())


def test_criterion_7(capsys):
    _run(capsys, 7, criterion_7())


def test_criterion_8(capsys):
    _run(capsys, 8, criterion_8())


def test_criterion_9(capsys, d0_depth9):
    _run(capsys, 9, criterion_9(d0_depth9))


def test_criterion_10(capsys):
    _run(capsys, 10, criterion_10())


def test_criterion_11(capsys, d0_depth8):
    _run(capsys, 11, criterion_11(d0_depth8))


def test_criterion_12(capsys, dual_d0_depth8):
    _run(capsys, 12, criterion_12(dual_d0_depth8))


if __name__ == "__main__":
    for n in range(1, 13):
        print(report(n, globals()["criterion_{}".format(n)]())[1])
