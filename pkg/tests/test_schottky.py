import numpy as np
import pytest

from apollonian.config import DUALITY, W_D0, W_D0_DUAL
from apollonian.gaussian import GaussRat
from apollonian.group import DepthCapError
from apollonian.packing import residual_membership_many
from apollonian.schottky import (check_relations, commutator, det, fixed_point, inv,
                                 inversive_generators, is_parabolic, limit_sample_to_csv,
                                 mat, mul, neg, power, sample_limit_set,
                                 schottky_generators, to_moebius, trace,
                                 verify_inversion_geometry)

i = GaussRat(0, 1)


def test_generators_parabolic():
    P1, P2 = schottky_generators()
    assert det(P1) == 1 and det(P2) == 1
    assert trace(P1) == 2 and trace(P2) == 2
    assert is_parabolic(P1) and is_parabolic(P2)


def test_commutator():
    P1, P2 = schottky_generators()
    C = commutator(P1, P2)
    assert C == mat(GaussRat(-1, -2), 2 * i, -2 * i, GaussRat(-1, 2))
    assert trace(C) == -2 and is_parabolic(C)
    assert commutator(P1, P1) == mat(1, 0, 0, 1)


def test_inversive_generators():
    P1, P2 = schottky_generators()
    p1, p2, p3, p4 = inversive_generators()
    assert p4 == mat(1, 0, 0, 1)
    assert p3 == power(P2, -2)
    assert mul(p2, p2) == neg(commutator(P1, P2))


def test_printed_relation_fails_and_corrected_holds():
    P1, _ = schottky_generators()
    p1, p2, _, _ = inversive_generators()
    lhs = mul(inv(p1), p2)
    target = neg(power(P1, -2))
    assert lhs != target
    # the printed product is the entrywise conjugate of the target
    assert lhs == tuple(tuple(z.conj() for z in r) for r in target)
    # s1 o s2 = p1 conj(p2) conj = p1 p2^-1, because conj(p_j) = p_j^-1
    for p in (p1, p2):
        assert tuple(tuple(z.conj() for z in r) for r in p) == inv(p)
    assert mul(p1, inv(p2)) == target
    # and as maps of the plane
    s1, s2 = to_moebius(p1, True), to_moebius(p2, True)
    g = to_moebius(target)
    for z in (0.3 + 0.1j, -1.2 + 2j, 5j):
        assert abs((s1 * s2)(z) - g(z)) < 1e-12 * max(1, abs(g(z)))


def test_check_relations_report():
    rel = check_relations()
    assert rel.pop("p1^-1 p2 = -P1^-2") is False
    assert all(rel.values()), rel


def test_fixed_points():
    P1, P2 = schottky_generators()
    assert fixed_point(P1) == -i
    assert fixed_point(P2) == 0
    assert fixed_point(commutator(P1, P2)) == 1
    assert fixed_point(mat(1, 1, 0, 1)) is None


def test_inversion_geometry():
    rep = verify_inversion_geometry()
    assert rep.ok, rep.failures
    assert rep.mapping == {1: 2, 2: 3, 3: 1, 4: 4}
    # s4 = conj is the real axis: row 1 of the published dual
    assert tuple(W_D0_DUAL[0]) == tuple((DUALITY @ W_D0)[3]) == (0, 0, 0, 1)


def test_limit_sample_depth0_on_residual(d0_depth8):
    s = sample_limit_set(0)
    assert np.allclose(sorted(s.points, key=lambda z: (z.real, z.imag)), [-1j, 0, 1])
    assert residual_membership_many(s.points, d0_depth8).all()


def test_limit_sample_depth6(d0_depth8):
    s = sample_limit_set(6)
    assert len(s.points) == 3 * 4 * 3 ** 5
    assert s.words == sorted(s.words)
    assert np.all(np.abs(s.points) <= 1 + 1e-9)  # inside the outer unit circle
    frac = residual_membership_many(s.points, d0_depth8).mean()
    assert frac >= 0.99


def test_limit_sample_cap_and_csv():
    with pytest.raises(DepthCapError):
        sample_limit_set(11)
    text = limit_sample_to_csv(sample_limit_set(1))
    lines = text.splitlines()
    assert lines[0] == "re,im,word"
    assert len(lines) == 1 + 12
