"""Finite state space with a validated metric."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .exceptions import ValidationError

__all__ = [
    "StateSpace",
    "validate_metric",
    "discrete_metric",
    "min_pairwise_distance",
]


@dataclass(frozen=True, eq=False)
class StateSpace:
    """Ordered state labels plus an ``m x m`` distance table.

    Build instances through :func:`validate_metric`; the constructor itself
    does not check the metric axioms.
    """

    states: tuple[str, ...]
    metric: np.ndarray

    @property
    def m(self) -> int:
        return len(self.states)

    @property
    def diameter(self) -> float:
        """Largest distance between two states."""
        return float(self.metric.max())

    def index(self, label) -> int:
        try:
            return self.states.index(str(label))
        except ValueError:
            raise ValidationError(
                "UnknownState", f"state {label!r} is not one of {list(self.states)}"
            ) from None

    def indices(self, labels) -> np.ndarray:
        return np.array([self.index(lab) for lab in labels], dtype=np.int64)

    def labels(self, indices) -> list[str]:
        return [self.states[int(i)] for i in indices]

    def distance(self, i: int, j: int) -> float:
        return float(self.metric[i, j])

    def __repr__(self):
        return f"StateSpace(states={list(self.states)!r}, diameter={self.diameter!r})"


def discrete_metric(m: int) -> np.ndarray:
    return 1.0 - np.eye(m)


def _exact(x) -> Fraction:
    # the shortest decimal that round-trips, i.e. the literal the user typed
    return Fraction(repr(float(x)))


def validate_metric(table, states: Sequence | None = None) -> StateSpace:
    """Check ``table`` against the metric axioms and wrap it in a StateSpace.

    Comparisons are exact; no tolerance is applied. The triangle inequality
    is decided in rational arithmetic on each entry's shortest decimal form,
    so ``0.9 <= 0.2 + 0.7`` holds as it does for the typed literals.

    When ``states`` is None the labels default to ``"0" .. "m-1"``. A table
    given as the string ``"discrete"`` expands to the discrete metric.
    """
    if isinstance(table, str):
        if table != "discrete":
            raise ValidationError("UnknownMetric", f"unknown metric name {table!r}")
        if states is None:
            raise ValidationError("TooFewStates", "discrete metric needs explicit states")
        table = discrete_metric(len(states))

    arr = np.asarray(table, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValidationError("NonSquare", f"metric table has shape {arr.shape}")
    m = arr.shape[0]
    if m < 2:
        raise ValidationError("TooFewStates", f"need at least 2 states, got {m}")
    if states is None:
        states = [str(i) for i in range(m)]
    states = tuple(str(s) for s in states)
    if len(states) != m:
        raise ValidationError(
            "LabelCountMismatch", f"{len(states)} labels for a {m}x{m} metric"
        )
    if len(set(states)) != m:
        raise ValidationError("DuplicateState", "state labels must be distinct")
    if not np.all(np.isfinite(arr)):
        raise ValidationError("NonFiniteEntry", "metric entries must be finite")

    neg = np.argwhere(arr < 0)
    if len(neg):
        i, j = (int(v) for v in neg[0])
        raise ValidationError(
            "NegativeEntry", f"d({states[i]},{states[j]}) = {arr[i, j]!r} < 0", pair=(i, j)
        )
    diag = np.flatnonzero(np.diag(arr) != 0)
    if len(diag):
        i = int(diag[0])
        raise ValidationError(
            "NonzeroDiagonal", f"d({states[i]},{states[i]}) = {arr[i, i]!r}", pair=(i, i)
        )
    asym = np.argwhere(arr != arr.T)
    if len(asym):
        i, j = (int(v) for v in asym[0])
        raise ValidationError(
            "AsymmetricMetric",
            f"d({states[i]},{states[j]}) = {arr[i, j]!r} but "
            f"d({states[j]},{states[i]}) = {arr[j, i]!r}",
            pair=(i, j),
        )
    off = ~np.eye(m, dtype=bool)
    zero = np.argwhere((arr == 0) & off)
    if len(zero):
        i, j = (int(v) for v in zero[0])
        raise ValidationError(
            "ZeroOffDiagonal", f"d({states[i]},{states[j]}) = 0 for distinct states",
            pair=(i, j),
        )
    # via[i, j, k] = d(i, j) + d(j, k); float sums only nominate candidates
    via = arr[:, :, None] + arr[None, :, :]
    near = arr[:, None, :] >= via * (1 - 1e-12)
    for i, j, k in np.argwhere(near).tolist():
        if j != i and j != k and _exact(arr[i, k]) > _exact(arr[i, j]) + _exact(arr[j, k]):
            raise ValidationError(
                "TriangleViolation",
                f"d({states[i]},{states[k]}) = {arr[i, k]!r} exceeds "
                f"d({states[i]},{states[j]}) + d({states[j]},{states[k]}) = {via[i, j, k]!r}",
                triple=(states[i], states[j], states[k]),
            )

    arr = arr.copy()
    arr.setflags(write=False)
    return StateSpace(states=states, metric=arr)


def min_pairwise_distance(space: StateSpace) -> float:
    """Smallest distance between two distinct states."""
    off = ~np.eye(space.m, dtype=bool)
    return float(space.metric[off].min())
