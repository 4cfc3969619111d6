import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from markovchaos import ValidationError, min_pairwise_distance, validate_metric
from markovchaos.state_space import discrete_metric

from conftest import dyadic_metric


def test_discrete_metric_accepted():
    space = validate_metric(discrete_metric(2), states=["a", "b"])
    assert space.m == 2
    assert space.states == ("a", "b")
    assert space.diameter == 1.0


def test_named_discrete_metric():
    space = validate_metric("discrete", states=["x", "y", "z"])
    np.testing.assert_array_equal(space.metric, 1 - np.eye(3))


def test_default_labels():
    assert validate_metric(discrete_metric(3)).states == ("0", "1", "2")


def test_asymmetric_rejected():
    table = [[0, 0.4], [0.5, 0]]
    with pytest.raises(ValidationError) as exc:
        validate_metric(table, states=["a", "b"])
    assert exc.value.code == "AsymmetricMetric"


def test_triangle_violation_reports_triple():
    table = [[0, 0.4, 1.0], [0.4, 0, 0.4], [1.0, 0.4, 0]]
    # independent scan: 1.0 > 0.4 + 0.4
    offending = [
        (i, j, k)
        for i, j, k in itertools.product(range(3), repeat=3)
        if table[i][k] > table[i][j] + table[j][k]
    ]
    assert offending[0] == (0, 1, 2)
    with pytest.raises(ValidationError) as exc:
        validate_metric(table, states=["a", "b", "c"])
    assert exc.value.code == "TriangleViolation"
    assert exc.value.details["triple"] == ("a", "b", "c")


@pytest.mark.parametrize(
    "table, code",
    [
        ([[0, 1, 1], [1, 0, 1]], "NonSquare"),
        ([[0]], "TooFewStates"),
        ([[0, -1], [-1, 0]], "NegativeEntry"),
        ([[0, 0], [0, 0]], "ZeroOffDiagonal"),
        ([[0.5, 1], [1, 0]], "NonzeroDiagonal"),
        ([[0, float("nan")], [float("nan"), 0]], "NonFiniteEntry"),
    ],
)
def test_rejections(table, code):
    with pytest.raises(ValidationError) as exc:
        validate_metric(table)
    assert exc.value.code == code


def test_exact_comparison_no_tolerance():
    eps = 1e-15
    with pytest.raises(ValidationError, match="AsymmetricMetric"):
        validate_metric([[0, 1.0], [1.0 + eps * 4, 0]])


def test_metric_is_read_only():
    space = validate_metric("discrete", states=["a", "b"])
    with pytest.raises(ValueError):
        space.metric[0, 1] = 3.0


@pytest.mark.parametrize("m", [2, 3, 7])
def test_min_distance_discrete(m):
    assert min_pairwise_distance(validate_metric(discrete_metric(m))) == 1.0


def test_min_distance_mixed_entries():
    table = [[0, 0.2, 0.7], [0.2, 0, 0.9], [0.7, 0.9, 0]]
    assert min(table[i][j] for i in range(3) for j in range(3) if i != j) == 0.2
    assert min_pairwise_distance(validate_metric(table)) == 0.2


def test_min_distance_two_states():
    assert min_pairwise_distance(validate_metric([[0, 0.37], [0.37, 0]])) == 0.37


@settings(max_examples=200, deadline=None)
@given(m=st.integers(2, 5), seed=st.integers(0, 2**32 - 1))
def test_random_metrics_accepted(m, seed):
    table = dyadic_metric(np.random.default_rng(seed), m)
    space = validate_metric(table)
    off = ~np.eye(m, dtype=bool)
    assert np.all(min_pairwise_distance(space) <= table[off])


@settings(max_examples=200, deadline=None)
@given(
    m=st.integers(3, 5),
    seed=st.integers(0, 2**32 - 1),
    kind=st.sampled_from(["asym", "zero", "neg", "triangle"]),
)
def test_injected_violation_rejected(m, seed, kind):
    rng = np.random.default_rng(seed)
    table = dyadic_metric(rng, m).copy()
    i, j = rng.choice(m, size=2, replace=False)
    if kind == "asym":
        table[i, j] += 1 / 64
        expected = "AsymmetricMetric"
    elif kind == "zero":
        table[i, j] = table[j, i] = 0.0
        expected = "ZeroOffDiagonal"
    elif kind == "neg":
        table[i, j] = table[j, i] = -table[i, j]
        expected = "NegativeEntry"
    else:
        k = next(x for x in range(m) if x not in (i, j))
        table[i, k] = table[k, i] = table[i, j] + table[j, k] + 1 / 64
        expected = "TriangleViolation"
    with pytest.raises(ValidationError) as exc:
        validate_metric(table)
    assert exc.value.code == expected
