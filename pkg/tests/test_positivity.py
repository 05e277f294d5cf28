import cmath
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from grcyc.cyclic_shift import RootSet, enumerate_fixed_points, v_S
from grcyc.errors import NotRealizable, ZeroInput
from grcyc.grassmann import PluckerVector, plucker_from_matrix
from grcyc.moment_curve import v0_point
from grcyc.positivity import (
    argument_bound_holds,
    gk_sample_check,
    is_tnn,
    is_tp,
    random_tnn_matrix,
    realize_real,
    sign_variation,
)

TNN_EXAMPLE = np.array([[1, 0, 0, -1], [-1, 2, 1, 3]])
Z = cmath.exp(1j * math.pi / 4)
W = cmath.exp(3j * math.pi / 4)


def test_sign_variation_examples():
    assert sign_variation([1, 0, -1]) == 1
    assert sign_variation([1, -1, 1]) == 2
    assert sign_variation([1, 0, 0, -1]) == 1
    assert sign_variation([-1, 2, 1, 3]) == 1
    assert sign_variation([]) == 0
    assert sign_variation([1e-14, -1, 1e-14, 1]) == 1


@given(st.lists(st.floats(-1e3, 1e3, allow_nan=False), max_size=12))
def test_sign_variation_scale_invariant(v):
    assert sign_variation(v) == sign_variation([-3.5 * x for x in v])
    assert sign_variation(v) <= max(len(v) - 1, 0)


def test_realize_real():
    x = np.array([1.0, 2.0, -0.5])
    assert np.allclose(realize_real(PluckerVector(1, 3, 1j * x)), x / 2)
    P = v_S(RootSet(2, 4, 1, (Z, 1 / Z)))
    assert np.allclose(realize_real(P), [math.sqrt(0.5), 1, math.sqrt(0.5), math.sqrt(0.5), 1, math.sqrt(0.5)])
    with pytest.raises(NotRealizable):
        realize_real(v_S(RootSet(2, 4, 1, (Z, W))))


def test_tnn_examples():
    P = plucker_from_matrix(TNN_EXAMPLE)
    assert is_tnn(P) and not is_tp(P)
    assert is_tp(v0_point(2, 4))
    bad = v_S(RootSet(2, 4, 1, (W, 1 / W)))
    assert not is_tnn(bad)
    assert is_tnn(PluckerVector(1, 3, -np.array([1.0, 2.0, 0.0])))


def test_gk_examples():
    rep = gk_sample_check(v0_point(3, 6), 1000, seed=0)
    assert rep.passed and rep.max_variation <= 2
    bad = gk_sample_check(v_S(RootSet(2, 4, 1, (W, 1 / W))), 1000, seed=0)
    assert not bad.passed and bad.max_variation >= 2 and bad.witness is not None
    full = gk_sample_check(plucker_from_matrix(np.eye(4)), 200, seed=1)
    assert full.passed and full.bound == 3
    assert gk_sample_check(v0_point(3, 6), 50, seed=5).to_json() == gk_sample_check(v0_point(3, 6), 50, seed=5).to_json()


@pytest.mark.parametrize("k,n", [(2, 4), (2, 5), (3, 6), (4, 7)])
def test_gk_on_random_tnn(k, n):
    rng = np.random.default_rng(k + 10 * n)
    for _ in range(5):
        P = plucker_from_matrix(random_tnn_matrix(k, n, rng))
        assert is_tp(P)
        assert gk_sample_check(P, 1000, seed=1).passed


def test_argument_bound():
    assert argument_bound_holds(Z, 2, 4)
    assert argument_bound_holds(1, 5, 9)
    assert not argument_bound_holds(1j, 2, 4)
    with pytest.raises(ZeroInput):
        argument_bound_holds(0, 2, 4)


@pytest.mark.parametrize("k,n", [(2, 4), (2, 5), (3, 6), (3, 7), (4, 8)])
def test_argument_bound_at_fixed_points(k, n):
    for fp in enumerate_fixed_points(k, n):
        roots = fp.roots.roots
        if is_tnn(fp.point):
            assert all(argument_bound_holds(z, k, n) for z in roots)
        else:
            conj_closed = all(min(abs(w - z.conjugate()) for w in roots) < 1e-9 for z in roots)
            assert not conj_closed or not all(argument_bound_holds(z, k, n) for z in roots)
