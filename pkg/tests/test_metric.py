import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lipderiv import (FiniteMetricSpace, InputError, IntervalUnion,
                      LinearMapSpec, ball, measure, operator_norm,
                      resolution_isolated, validate_metric)


def test_norms():
    sp1 = FiniteMetricSpace([0, 1], coords=[[0.0, 0.0], [3.0, 4.0]], p=1.0)
    sp2 = FiniteMetricSpace([0, 1], coords=[[0.0, 0.0], [3.0, 4.0]], p=2.0)
    spi = FiniteMetricSpace([0, 1], coords=[[0.0, 0.0], [3.0, 4.0]], p=np.inf)
    assert sp1.dist(0, 1) == 7.0
    assert sp2.dist(0, 1) == 5.0
    assert spi.dist(0, 1) == 4.0


def test_duplicate_ids_rejected():
    with pytest.raises(InputError):
        FiniteMetricSpace(["a", "a"], coords=[[0.0], [1.0]])


def test_unknown_point():
    sp = FiniteMetricSpace.grid1d(0, 1, 0.5)
    with pytest.raises(InputError):
        sp.index("nope")


def test_validate_metric_on_embedding_is_clean():
    rng = np.random.default_rng(0)
    sp = FiniteMetricSpace(range(10), coords=rng.normal(size=(10, 3)))
    assert validate_metric(sp) == []


def test_validate_metric_flags_violations():
    # asymmetric and triangle-breaking table
    table = np.array([[0.0, 1.0, 5.0],
                      [1.0, 0.0, 1.0],
                      [5.0, 1.0, 0.1]])
    sp = FiniteMetricSpace(["a", "b", "c"], table=table)
    axioms = {v["axiom"] for v in validate_metric(sp)}
    assert "identity" in axioms      # d(c,c) = 0.1
    assert "triangle" in axioms      # d(a,c) > d(a,b) + d(b,c)


def test_validate_metric_positivity():
    table = np.zeros((2, 2))
    sp = FiniteMetricSpace(["a", "b"], table=table)
    axioms = {v["axiom"] for v in validate_metric(sp)}
    assert axioms == {"positivity"}


@given(st.integers(2, 12), st.integers(0, 10_000))
@settings(max_examples=50, deadline=None)
def test_embedded_spaces_always_valid(n, seed):
    rng = np.random.default_rng(seed)
    p = rng.choice([1.0, 2.0, np.inf])
    sp = FiniteMetricSpace(range(n), coords=rng.uniform(-1, 1, (n, 2)), p=p)
    assert validate_metric(sp) == []


def test_ball_open_vs_closed():
    sp = FiniteMetricSpace.grid1d(0.0, 1.0, 0.25)
    x = sp.ids[2]          # 0.5
    assert ball(sp, x, 0.25) == {x}
    closed = ball(sp, x, 0.25, closed=True)
    assert len(closed) == 3
    with pytest.raises(InputError):
        ball(sp, x, 0.0)


def test_resolution_and_isolated():
    sp = FiniteMetricSpace(range(3), coords=[[0.0], [0.1], [5.0]])
    assert sp.resolution() == pytest.approx(0.1)
    assert resolution_isolated(sp, 1.0) == {2}
    assert resolution_isolated(sp, 0.2) == {2}
    assert resolution_isolated(sp, 0.05) == {0, 1, 2}


def test_cross_matches_pairwise():
    rng = np.random.default_rng(3)
    sp = FiniteMetricSpace(range(6), coords=rng.normal(size=(6, 2)))
    idx = [1, 3, 4]
    np.testing.assert_allclose(sp.cross(idx, idx), sp.pairwise(idx))


def test_interval_union_normalizes_and_measures():
    E = IntervalUnion([(2.0, 3.0), (0.0, 1.0), (0.5, 1.5)])
    assert E.intervals == ((0.0, 1.5), (2.0, 3.0))
    assert measure(E) == 2.5
    assert E.contains(1.5) and not E.contains(1.75)
    assert E.distance_to(1.75) == pytest.approx(0.25)
    assert E.intersect(1.0, 2.5).measure() == pytest.approx(1.0)
    assert IntervalUnion([]).measure() == 0.0
    assert IntervalUnion([]).distance_to(0.0) == math.inf
    with pytest.raises(InputError):
        IntervalUnion([(1.0, 0.0)])


def test_interval_union_ops():
    a = IntervalUnion([(0.0, 1.0)])
    b = IntervalUnion([(0.5, 2.0)])
    assert a.union(b) == IntervalUnion([(0.0, 2.0)])
    assert a.intersect(2.0, 0.25).measure() == pytest.approx(0.75)


def test_operator_norm_diag_exact():
    A = LinearMapSpec([[2.0, 0.0], [0.0, 1.0]])
    assert operator_norm(A) == 2.0


def test_operator_norm_rotation():
    c, s = math.cos(0.5), math.sin(0.5)
    A = LinearMapSpec([[c, -s], [s, c]])
    assert operator_norm(A, sphere_samples=5000) == pytest.approx(1.0, abs=1e-9)


def test_operator_norm_is_lower_bound():
    rng = np.random.default_rng(1)
    for _ in range(20):
        M = rng.normal(size=(2, 2))
        got = operator_norm(LinearMapSpec(M), sphere_samples=4000)
        exact = float(np.linalg.norm(M, 2))
        assert got <= exact + 1e-12
        assert got >= 0.99 * exact


def test_linear_map_spec_validation():
    with pytest.raises(InputError):
        LinearMapSpec([1.0, 2.0])
    with pytest.raises(InputError):
        LinearMapSpec([[math.nan, 0.0], [0.0, 1.0]])
