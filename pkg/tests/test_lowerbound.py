import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from spdembed import generators as gens
from spdembed.graph import apsp
from spdembed.lowerbound import (
    PoincareWeights,
    diamond_distortion_lower_bound,
    diamond_poincare,
    diamond_weighted_distance_sum,
    lee_naor_value,
    quadrilateral_gap,
)


def test_weights():
    for k in range(0, 6):
        for p in (2, 2.5, 3, 4):
            w = PoincareWeights.of(k, p)
            assert w.alpha[0] == w.alpha[1] == 2.0 ** (-k * (p - 2))
            assert w.alpha[k + 1] == 1
            for i in range(1, k + 1):
                assert w.alpha[i] * 2 ** (p - 2) == pytest.approx(w.alpha[i + 1])


def test_quadrilateral_examples():
    sq = [np.array(v, float) for v in [(0, 0), (1, 0), (1, 1), (0, 1)]]
    assert quadrilateral_gap(*sq, 2) == 0
    z = np.ones(3)
    assert quadrilateral_gap(z, z, z, z, 3) == 0
    with pytest.raises(ValueError):
        quadrilateral_gap(*sq, 1.5)


vec = arrays(np.float64, 4, elements=st.floats(-100, 100))


@settings(max_examples=300)
@given(vec, vec, vec, vec, st.sampled_from([2.0, 2.5, 3.0, 4.0]))
def test_quadrilateral_nonnegative(a, b, c, d, p):
    scale = max(1.0, float(np.abs(np.stack([a, b, c, d])).max())) ** p
    assert quadrilateral_gap(a, b, c, d, p) >= -1e-9 * scale


def test_poincare_examples():
    _, lv = gens.diamond(2)
    assert diamond_poincare(np.zeros((12, 3)), lv, 2) == (0, 0)
    # D_1: s=0, t=1, u=2, v=3 on the unit square; both sides are 4
    _, lv1 = gens.diamond(1)
    sq = np.array([(0, 0), (1, 1), (1, 0), (0, 1)], float)
    lhs, rhs = diamond_poincare(sq, lv1, 2)
    assert lhs == rhs == 4
    with pytest.raises(ValueError):
        diamond_poincare(np.zeros((5, 2)), lv1, 2)


@pytest.mark.parametrize("k", [1, 2, 3])
@pytest.mark.parametrize("p", [2, 3, 4])
def test_weighted_distance_sum(k, p):
    g, lv = gens.diamond(k)
    assert diamond_weighted_distance_sum(lv, apsp(g), p) == (k + 1) * 4**k


def test_weighted_distance_sum_k4():
    g, lv = gens.diamond(4)
    D = apsp(g)
    for p in (2, 3, 4):
        assert diamond_weighted_distance_sum(lv, D, p) == 5 * 4**4


def test_bound_examples():
    assert diamond_distortion_lower_bound(3, 2) == 2
    assert diamond_distortion_lower_bound(0, 2) == 1
    assert diamond_distortion_lower_bound(7, 4) == pytest.approx(2**0.25)
    with pytest.raises(ValueError):
        diamond_distortion_lower_bound(3, 1.5)
    assert lee_naor_value(3, 2) == 2


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 3), st.sampled_from([2.0, 3.0, 4.0]), st.integers(0, 2**31))
def test_poincare_random_embeddings(k, p, seed):
    g, lv = gens.diamond(k)
    X = np.random.default_rng(seed).normal(size=(g.n, 4))
    lhs, rhs = diamond_poincare(X, lv, p)
    assert lhs <= rhs + 1e-9 * max(1.0, rhs)
