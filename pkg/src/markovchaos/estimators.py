"""scikit-learn style front ends.

These wrap the functional API so chains, encoders and scanners can be
configured with ``get_params``/``set_params``, cloned, and dropped into
pipelines. Fitted attributes carry a trailing underscore.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_path
from .chaos import DEFAULT_WINDOW, arc_coverage, default_epsilon0, find_witnesses
from .randomwalk import decode_events_to_walk, encode_walk_to_events
from .simulator import random_initial, simulate
from .state_space import validate_metric
from .transition import block_encode, lift_to_first_order, validate_stochastic

__all__ = [
    "MarkovChainSimulator",
    "BlockEncoder",
    "WalkEventEncoder",
    "UnpredictabilityScanner",
    "ArcCoverageAnalyzer",
]


def _space_for(metric, states, m):
    if states is None:
        states = [str(i) for i in range(m)]
    return validate_metric(metric, states=states)


class MarkovChainSimulator(BaseEstimator):
    """Seeded sampler for a chain of any memory order.

    Parameters
    ----------
    transitions : array-like of shape (m**order, m)
        Conditional probabilities, one row per conditioning word.
    order : int, optional
        Memory order; inferred from the shape when omitted.
    strict : bool, default=False
        Reject zero probabilities.
    states : list of str, optional
        State labels, defaults to ``"0" .. "m-1"``.
    metric : "discrete" or array-like, default="discrete"
    seed : int, default=0
    """

    def __init__(self, transitions=None, order=None, strict=False, states=None,
                 metric="discrete", seed=0):
        self.transitions = transitions
        self.order = order
        self.strict = strict
        self.states = states
        self.metric = metric
        self.seed = seed

    def fit(self, X=None, y=None):
        self.model_ = validate_stochastic(self.transitions, order=self.order, strict=self.strict)
        self.space_ = _space_for(self.metric, self.states, self.model_.m)
        self.lifted_ = lift_to_first_order(self.model_)
        self.n_states_ = self.model_.m
        return self

    def sample(self, n_steps, initial=None, seed=None):
        check_is_fitted(self, "model_")
        seed = self.seed if seed is None else seed
        if initial is None:
            initial = random_initial(self.model_, seed)
        return simulate(self.model_, initial, n_steps, seed)


class BlockEncoder(TransformerMixin, BaseEstimator):
    """Map a path to its overlapping width-``order + 1`` block events."""

    def __init__(self, order=1):
        self.order = order

    def fit(self, X=None, y=None):
        self.n_features_in_ = 1
        return self

    def transform(self, X):
        return block_encode(check_path(X, min_length=self.order + 1), self.order)

    def inverse_transform(self, X):
        blocks = np.asarray(X, dtype=np.int64)
        return np.concatenate([blocks[0], blocks[1:, -1]])


class WalkEventEncoder(TransformerMixin, BaseEstimator):
    """Raw reflecting-walk levels to two-symbol event codes and back."""

    def fit(self, X=None, y=None):
        return self

    def transform(self, X):
        return encode_walk_to_events(check_path(X))

    def inverse_transform(self, X):
        return decode_events_to_walk(check_path(X))


class UnpredictabilityScanner(BaseEstimator):
    """Search a realization for recurrence-then-divergence witnesses.

    ``epsilon0=None`` uses half the smallest inter-state distance.
    ``recurrence`` and ``tolerance`` are passed to :func:`find_witnesses`.
    """

    def __init__(self, window=DEFAULT_WINDOW, epsilon0=None, max_witnesses=None,
                 metric="discrete", states=None, recurrence="equality", tolerance=None):
        self.window = window
        self.epsilon0 = epsilon0
        self.max_witnesses = max_witnesses
        self.metric = metric
        self.states = states
        self.recurrence = recurrence
        self.tolerance = tolerance

    def fit(self, X, y=None):
        path = check_path(X)
        m = len(self.states) if self.states is not None else max(int(path.max()) + 1, 2)
        if not isinstance(self.metric, str):
            m = len(self.metric)
        self.space_ = _space_for(self.metric, self.states, m)
        self.epsilon0_ = default_epsilon0(self.space_) if self.epsilon0 is None else self.epsilon0
        self.report_ = find_witnesses(
            path, self.space_, self.window, self.epsilon0_, self.max_witnesses,
            recurrence=self.recurrence, tolerance=self.tolerance,
        )
        self.witnesses_ = self.report_.witnesses
        self.n_witnesses_ = len(self.witnesses_)
        return self


class ArcCoverageAnalyzer(BaseEstimator):
    """Which admissible length-``word_length`` words a realization contains."""

    def __init__(self, model=None, word_length=5):
        self.model = model
        self.word_length = word_length

    def fit(self, X, y=None):
        self.report_ = arc_coverage(check_path(X, self.model.m), self.model, self.word_length)
        self.missing_ = self.report_.missing
        self.forbidden_found_ = self.report_.forbidden_found
        return self
