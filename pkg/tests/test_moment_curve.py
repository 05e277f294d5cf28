import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from grcyc.errors import ShapeMismatch
from grcyc.grassmann import plucker_from_matrix, projective_distance, subsets
from grcyc.moment_curve import f_k, trig_vandermonde_det, trig_vandermonde_formula, v0_matrix, v0_plucker_formula, v0_point

angles = st.floats(-20, 20, allow_nan=False)


def test_f_k_values():
    assert f_k(3, 0).tolist() == [1, 1, 0]
    assert f_k(4, 0).tolist() == [1, 0, 1, 0]
    assert f_k(1, 2.3).tolist() == [1]


@given(st.integers(2, 6), angles)
def test_f_k_quasi_periodic(k, theta):
    assert np.allclose(f_k(k, theta + 2 * math.pi), (-1) ** (k - 1) * f_k(k, theta), atol=1e-12)


def test_trig_vandermonde_examples():
    assert trig_vandermonde_det([0.7]) == 1
    assert trig_vandermonde_det([0, math.pi]) == pytest.approx(1)
    assert trig_vandermonde_det([0, 2 * math.pi / 3, 4 * math.pi / 3]) == pytest.approx(3 * math.sqrt(3) / 2)
    assert trig_vandermonde_formula([]) == 1


@given(st.lists(st.floats(-7, 7, allow_nan=False), min_size=1, max_size=6))
def test_trig_vandermonde_self_check(thetas):
    # raises ArithmeticError on disagreement with the literal determinant
    trig_vandermonde_det(thetas)


def test_v0_formula_examples():
    assert v0_plucker_formula(2, 4, (1, 3)) == pytest.approx(1)
    assert v0_plucker_formula(2, 4, (1, 2)) == pytest.approx(math.sqrt(0.5))
    with pytest.raises(ShapeMismatch):
        v0_plucker_formula(3, 3, (1, 2, 3))


def test_v0_matrix_k1():
    assert projective_distance(plucker_from_matrix(v0_matrix(1, 3)), plucker_from_matrix([[1, 1, 1]])) < 1e-15


@pytest.mark.parametrize("k,n", [(k, n) for n in range(2, 11) for k in range(1, min(n, 6))])
def test_v0_matrix_matches_formula(k, n):
    assert projective_distance(plucker_from_matrix(v0_matrix(k, n)), v0_point(k, n)) < 1e-9


@given(st.integers(2, 9).flatmap(lambda n: st.tuples(st.integers(1, n - 1), st.just(n))), angles)
def test_v0_matrix_theta_independent(kn, theta):
    k, n = kn
    assert projective_distance(plucker_from_matrix(v0_matrix(k, n, theta)), v0_point(k, n)) < 1e-9


@pytest.mark.parametrize("k,n", [(2, 5), (3, 7), (4, 9)])
def test_v0_positive_and_dihedral(k, n):
    for I in subsets(k, n):
        value = v0_plucker_formula(k, n, I)
        assert value > 0
        rotated = sorted(i % n + 1 for i in I)
        reflected = sorted(n + 1 - i for i in I)
        assert v0_plucker_formula(k, n, rotated) == pytest.approx(value)
        assert v0_plucker_formula(k, n, reflected) == pytest.approx(value)
