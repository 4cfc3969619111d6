"""Transition laws of finite memory order and their block-state lift."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

import numpy as np

from .exceptions import ValidationError

__all__ = [
    "ROW_SUM_TOL",
    "TransitionModel",
    "validate_stochastic",
    "lift_to_first_order",
    "block_encode",
    "subsequence_projection",
    "word_index",
    "index_word",
]

ROW_SUM_TOL = 1e-12


def word_index(word, m: int) -> int:
    """Base-``m`` index of ``word`` with the oldest symbol most significant."""
    idx = 0
    for s in word:
        idx = idx * m + int(s)
    return idx


def index_word(idx: int, m: int, r: int) -> tuple[int, ...]:
    out = []
    for _ in range(r):
        idx, s = divmod(idx, m)
        out.append(s)
    return tuple(reversed(out))


@dataclass(frozen=True, eq=False)
class TransitionModel:
    """Time-homogeneous transition law with memory ``order``.

    ``probs[w, j]`` is the probability of moving to state ``j`` when the last
    ``order`` states spell the word with index ``w`` (see :func:`word_index`).
    """

    order: int
    probs: np.ndarray
    strict: bool = False

    @property
    def m(self) -> int:
        return self.probs.shape[1]

    @property
    def n_blocks(self) -> int:
        return self.probs.shape[0]

    def row(self, block) -> np.ndarray:
        return self.probs[word_index(block, self.m)]

    def transition_probability(self, block, nxt: int) -> float:
        return float(self.probs[word_index(block, self.m), nxt])

    def path_probability(self, path) -> float:
        """Probability of ``path`` given that its first ``order`` states occurred."""
        r = self.order
        p = 1.0
        for t in range(r, len(path)):
            p *= self.probs[word_index(path[t - r:t], self.m), int(path[t])]
        return float(p)

    def digest(self) -> str:
        payload = json.dumps(
            {"order": self.order, "probs": self.probs.tolist()}, separators=(",", ":")
        )
        return hashlib.sha256(payload.encode()).hexdigest()[:16]

    def __repr__(self):
        return f"TransitionModel(order={self.order}, m={self.m}, strict={self.strict})"


def _infer_order(n_rows: int, m: int) -> int | None:
    r, size = 1, m
    while size < n_rows:
        size *= m
        r += 1
    return r if size == n_rows else None


def validate_stochastic(tensor, order: int | None = None, strict: bool = False) -> TransitionModel:
    """Validate a raw probability tensor and return a TransitionModel.

    ``tensor`` is either a 2-d table of shape ``(m**order, m)`` or a full
    tensor of shape ``(m,) * (order + 1)``. Rows must be nonnegative and sum
    to one within :data:`ROW_SUM_TOL`; ``strict`` also forbids zero entries.
    """
    arr = np.asarray(tensor, dtype=float)
    if arr.ndim < 2 or arr.shape[-1] < 1:
        raise ValidationError("ShapeInvalid", f"transition tensor has shape {arr.shape}")
    m = arr.shape[-1]
    if arr.ndim > 2:
        if any(d != m for d in arr.shape):
            raise ValidationError("ShapeInvalid", f"transition tensor has shape {arr.shape}")
        inferred = arr.ndim - 1
        arr = arr.reshape(-1, m)
    else:
        inferred = _infer_order(arr.shape[0], m)
        if inferred is None:
            raise ValidationError(
                "ShapeInvalid", f"{arr.shape[0]} rows is not a power of m={m}"
            )
    if order is None:
        order = inferred
    elif order != inferred:
        raise ValidationError(
            "ShapeInvalid", f"shape {arr.shape} does not match order {order} over {m} states"
        )
    if order < 1:
        raise ValidationError("ShapeInvalid", "memory order must be at least 1")
    if not np.all(np.isfinite(arr)):
        raise ValidationError("NonFiniteProbability", "probabilities must be finite")

    neg = np.argwhere(arr < 0)
    if len(neg):
        w, j = (int(v) for v in neg[0])
        raise ValidationError(
            "NegativeProbability", f"row {w}, column {j} is {arr[w, j]!r}", row=w, column=j
        )
    sums = arr.sum(axis=1)
    bad = np.flatnonzero(np.abs(sums - 1.0) > ROW_SUM_TOL)
    if len(bad):
        w = int(bad[0])
        raise ValidationError(
            "RowSumInvalid", f"row {w} sums to {sums[w]!r}", row=w, sum=float(sums[w])
        )
    if strict:
        zero = np.argwhere(arr == 0)
        if len(zero):
            w, j = (int(v) for v in zero[0])
            raise ValidationError(
                "ZeroProbabilityInStrictMode",
                f"row {w}, column {j} is zero but strict positivity is required",
                row=w, column=j,
            )
    arr = arr.copy()
    arr.setflags(write=False)
    return TransitionModel(order=int(order), probs=arr, strict=bool(strict))


def lift_to_first_order(model: TransitionModel) -> TransitionModel:
    """Rewrite an order-r chain as a first-order chain on ``m**r`` blocks.

    Block ``(a1..ar)`` moves to ``(a2..ar, j)`` with probability
    ``probs[(a1..ar), j]``; every other block transition has probability 0.
    """
    if model.order == 1:
        return model
    m, nb = model.m, model.n_blocks
    lifted = np.zeros((nb, nb))
    for a in range(nb):
        base = (a * m) % nb
        lifted[a, base:base + m] = model.probs[a]
    lifted.setflags(write=False)
    return TransitionModel(order=1, probs=lifted, strict=False)


def block_encode(path, r: int) -> np.ndarray:
    """Sliding windows of width ``r + 1`` over ``path``.

    Row ``t`` is the block event ``path[t : t + r + 1]``; consecutive rows
    overlap in ``r`` symbols.
    """
    arr = np.asarray(path, dtype=np.int64)
    if r < 1:
        raise ValidationError("OrderInvalid", f"memory order must be >= 1, got {r}")
    if arr.ndim != 1 or len(arr) < r + 1:
        raise ValidationError(
            "PathTooShort", f"need at least {r + 1} states for order {r}, got {arr.size}"
        )
    return np.lib.stride_tricks.sliding_window_view(arr, r + 1).copy()


def subsequence_projection(blocks, j: int) -> np.ndarray:
    """The ``j``-th symbol (1-based) of every block."""
    arr = np.asarray(blocks)
    width = arr.shape[1]
    if not 1 <= j <= width:
        raise ValidationError("IndexOutOfRange", f"coordinate {j} not in 1..{width}")
    return arr[:, j - 1].copy()
