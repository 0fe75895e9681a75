from fractions import Fraction
import itertools

import numpy as np

from apollonian.forms import (A, J0, Q_D, Q_L, Q_W, W0, Z_INT, congruence, det, exact,
                              form_determinants, identity, is_automorph, matmul)
from apollonian.group import GENERATORS, generator_matrix, word_to_matrix


def test_congruence_examples():
    assert np.array_equal(congruence(identity(), Q_D), Q_D)
    assert np.array_equal(congruence(J0, Q_L), Q_D)
    assert np.array_equal(congruence(A, Q_L), Q_W)


def test_j0_involutory_and_a():
    assert np.array_equal(J0, J0.T)
    assert np.array_equal(J0 @ J0, identity())
    assert np.array_equal(A, J0 @ W0)


def test_is_automorph():
    assert is_automorph(identity(), Q_D)
    assert is_automorph(generator_matrix(GENERATORS[0]), Q_D)
    assert not is_automorph(exact(np.diag([2, 1, 1, 1])), Q_D)


def test_determinants():
    assert form_determinants() == (-1, -1, -64)
    assert det(identity()) == 1
    assert det(Q_D) * det(Q_D) == 1
    assert np.array_equal(Q_D @ Q_D, identity())


def test_det_against_numpy():
    rng = np.random.default_rng(3)
    for _ in range(20):
        m = rng.integers(-5, 6, size=(4, 4))
        assert abs(float(det(exact(m))) - np.linalg.det(m)) < 1e-6


def test_det_exact_on_rationals():
    m = exact([[Fraction(1, 2), 1, 0, 0], [0, Fraction(1, 3), 0, 0],
               [0, 0, 0, 1], [0, 0, 1, 0]])
    assert det(m) == Fraction(-1, 6)


def test_automorph_closure_on_products():
    for word in itertools.product(GENERATORS, repeat=3):
        assert is_automorph(word_to_matrix(word), Q_D)


def test_z_intertwines_up_to_scalar():
    # Z = sqrt(2) Z_INT, so Z^T Q_L Z = 2 Z_INT^T Q_L Z_INT
    assert np.array_equal(2 * congruence(Z_INT, Q_L), Q_W)


def test_matmul_matches_fraction_product():
    rng = np.random.default_rng(0)
    for _ in range(20):
        a = exact([[Fraction(int(p), int(q)) for p, q in zip(r1, r2)]
                   for r1, r2 in zip(rng.integers(-9, 9, (4, 3)), rng.integers(1, 7, (4, 3)))])
        b = exact([[Fraction(int(p), int(q)) for p, q in zip(r1, r2)]
                   for r1, r2 in zip(rng.integers(-9, 9, (3, 4)), rng.integers(1, 7, (3, 4)))])
        assert np.array_equal(matmul(a, b), a @ b)
        assert np.array_equal(matmul(a, b, J0), a @ b @ J0)


def leibniz(M):
    n = len(M)
    total = Fraction(0)
    for p in itertools.permutations(range(n)):
        inversions = sum(p[i] > p[j] for i, j in itertools.combinations(range(n), 2))
        term = Fraction((-1) ** inversions)
        for i in range(n):
            term *= M[i][p[i]]
        total += term
    return total


def test_det_against_leibniz_expansion():
    rng = np.random.default_rng(1)
    for _ in range(200):
        n = int(rng.integers(1, 6))
        M = [[Fraction(int(rng.integers(-3, 4)), int(rng.integers(1, 4))) if rng.random() < 0.7 else Fraction(0)
              for _ in range(n)] for _ in range(n)]
        assert det(exact(M)) == leibniz(M)
