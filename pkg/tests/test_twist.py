import numpy as np
import pytest
from hypothesis import given, strategies as st

from grcyc.cyclic_shift import enumerate_fixed_points, sigma_power
from grcyc.errors import OutsidePiCircle
from grcyc.grassmann import PluckerVector, plucker_from_matrix, projective_distance, random_point, torus_equivalent
from grcyc.moment_curve import v0_point
from grcyc.positivity import is_tnn, random_tnn_matrix
from grcyc.twist import (
    in_pi_circle,
    is_inversion_closed,
    left_twist,
    periodicity_check,
    right_twist,
    twist_fixed_candidates,
    twist_point,
)

A_IN = np.array([[1, 1, 0, -4], [0, 2, 1, 3]])
A_OUT = np.array([[1, 1, 3 / 4, 0], [-1 / 2, 0, 1, 1 / 3]])


def test_worked_example():
    assert np.allclose(right_twist(A_IN), A_OUT, atol=1e-12)
    assert np.allclose(left_twist(A_OUT), A_IN, atol=1e-12)


def test_pairing_conditions():
    rng = np.random.default_rng(3)
    A = rng.normal(size=(3, 7)) + 1j * rng.normal(size=(3, 7))
    B = right_twist(A)
    G = B.T @ A  # bilinear form, no conjugation
    for j in range(7):
        assert G[j, j] == pytest.approx(1)
        for d in (1, 2):
            assert abs(G[j, (j + d) % 7]) < 1e-10


def test_k1_is_reciprocal():
    a = np.array([[2.0, -1.0, 0.5j, 4.0]])
    assert np.allclose(right_twist(a), 1 / a)
    with pytest.raises(OutsidePiCircle):
        right_twist([[1.0, 0.0, 2.0]])


def test_outside_pi_circle():
    with pytest.raises(OutsidePiCircle):
        twist_point(PluckerVector.from_mapping(2, 4, {"1,2": 1}))
    with pytest.raises(OutsidePiCircle):
        right_twist([[1, 0, 0, -1], [-1, 2, 1, 3]])


def test_in_pi_circle_examples():
    assert in_pi_circle(v0_point(2, 4))
    assert not in_pi_circle(PluckerVector.from_mapping(2, 4, {"1,2": 1}))
    assert not in_pi_circle(plucker_from_matrix([[1, 0, 0, -1], [-1, 2, 1, 3]]))


@pytest.mark.parametrize("k,n", [(2, 4), (3, 6), (2, 5)])
def test_round_trip(k, n):
    rng = np.random.default_rng(n)
    for _ in range(100 if (k, n) == (3, 6) else 30):
        A = rng.normal(size=(k, n)) + 1j * rng.normal(size=(k, n))
        assert np.allclose(left_twist(right_twist(A)), A, atol=1e-8)
        assert np.allclose(right_twist(left_twist(A)), A, atol=1e-8)


@given(st.sampled_from([(2, 4), (2, 5), (3, 5), (3, 6)]), st.integers(0, 2 ** 32 - 1))
def test_periodicity(kn, seed):
    P = random_point(*kn, np.random.default_rng(seed))
    assert periodicity_check(P)


@pytest.mark.parametrize("k,n", [(2, 4), (2, 5)])
def test_full_period(k, n):
    rng = np.random.default_rng(7)
    P = random_point(k, n, rng)
    Q = P
    for _ in range(2 * n):
        Q = twist_point(Q)
    assert torus_equivalent(Q, P)


def test_twist_preserves_positivity():
    rng = np.random.default_rng(5)
    for _ in range(10):
        P = plucker_from_matrix(random_tnn_matrix(2, 5, rng))
        assert is_tnn(twist_point(P))


def test_inversion_closed():
    z = np.exp(1j * np.pi / 4)
    assert is_inversion_closed([z, 1 / z])
    assert is_inversion_closed([1, -1, 1j, -1j])
    assert not is_inversion_closed([z, 1j])
    assert not is_inversion_closed([2])


def test_candidates():
    c = twist_fixed_candidates(2, 4)
    assert [fp.roots.indices for fp in c] == [(0, 3), (1, 2)]
    assert len(twist_fixed_candidates(3, 6)) == 4
    assert twist_fixed_candidates(2, 4, 2.0) == []


@pytest.mark.parametrize("k,n", [(2, 4), (2, 5), (3, 6), (3, 7), (4, 8)])
def test_only_tnn_candidate_is_v0(k, n):
    tnn = [fp for fp in twist_fixed_candidates(k, n) if is_tnn(fp.point)]
    assert len(tnn) == 1
    assert projective_distance(tnn[0].point, v0_point(k, n)) < 1e-9
    for fp in twist_fixed_candidates(k, n):
        assert projective_distance(twist_point(fp.point), fp.point) < 1e-8


def test_fixed_points_twist_is_sigma_related():
    for fp in enumerate_fixed_points(2, 5):
        if in_pi_circle(fp.point):
            Q = twist_point(twist_point(fp.point))
            assert torus_equivalent(Q, sigma_power(fp.point, 2))
