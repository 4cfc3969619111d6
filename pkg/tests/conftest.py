import numpy as np
import pytest
from hypothesis import strategies as st

from markovchaos import build_walk_chain, validate_metric


def shortest_path_closure(table):
    """Floyd-Warshall closure; turns positive symmetric weights into a metric."""
    d = np.array(table, dtype=float)
    m = len(d)
    for k in range(m):
        d = np.minimum(d, d[:, [k]] + d[[k], :])
    return d


def dyadic_metric(rng, m, grid=64, top=128):
    """Random metric with entries in {1/grid, ..., top/grid}, all exactly representable."""
    w = rng.integers(1, top + 1, size=(m, m)) / grid
    w = np.triu(w, 1)
    w = w + w.T
    return shortest_path_closure(w)


@st.composite
def metric_spaces(draw, max_m=4):
    m = draw(st.integers(2, max_m))
    seed = draw(st.integers(0, 2**32 - 1))
    return validate_metric(dyadic_metric(np.random.default_rng(seed), m))


@pytest.fixture(scope="session")
def walk():
    return build_walk_chain()


@pytest.fixture
def discrete2():
    return validate_metric("discrete", states=["a", "b"])
