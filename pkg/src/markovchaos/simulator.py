"""Seeded sample paths of finite-memory chains."""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from itertools import accumulate

import numpy as np

from .exceptions import ValidationError
from .rng import SplitMix64, derive_seed, uniforms
from .transition import TransitionModel, index_word, word_index

__all__ = ["Realization", "simulate", "random_initial", "INITIAL_STREAM_TAG"]

INITIAL_STREAM_TAG = 1


@dataclass(frozen=True, eq=False)
class Realization:
    """A finite sample path together with what produced it.

    ``path[:order]`` is the initial block; every later state was drawn from
    the model given the ``order`` states before it.
    """

    path: np.ndarray
    seed: int
    model_digest: str
    initial: tuple[int, ...]

    def __len__(self):
        return len(self.path)

    def __array__(self, dtype=None, copy=None):
        return self.path if dtype is None else self.path.astype(dtype)


def _check_initial(model: TransitionModel, initial) -> tuple[int, ...]:
    if np.isscalar(initial):
        initial = (initial,)
    block = tuple(int(s) for s in initial)
    if len(block) != model.order or any(not 0 <= s < model.m for s in block):
        raise ValidationError(
            "InitialBlockInvalid",
            f"initial block {block} must be {model.order} symbols in 0..{model.m - 1}",
        )
    return block


def random_initial(model: TransitionModel, seed: int) -> tuple[int, ...]:
    """Uniform starting block, drawn from a sub-stream of ``seed``."""
    gen = SplitMix64(derive_seed(seed, INITIAL_STREAM_TAG))
    return index_word(gen.randbelow(model.n_blocks), model.m, model.order)


def simulate(model: TransitionModel, initial, N: int, seed: int) -> Realization:
    """Draw a path of total length ``N`` starting from ``initial``.

    Step ``t`` uses the ``t``-th uniform ``u`` of the seed's stream and picks
    the first state whose cumulative probability exceeds ``u``; a draw equal
    to a cumulative boundary therefore goes to the higher index.
    """
    block = _check_initial(model, initial)
    if N < 1:
        raise ValidationError("LengthInvalid", f"path length must be >= 1, got {N}")
    m, r, nb = model.m, model.order, model.n_blocks
    cums = [list(accumulate(row)) for row in model.probs.tolist()]
    last_pos = [max(j for j in range(m) if row[j] > 0) for row in model.probs.tolist()]

    path = np.empty(N, dtype=np.int64)
    path[: min(r, N)] = block[:N]
    n_steps = N - r
    if n_steps > 0:
        us = uniforms(seed, n_steps).tolist()
        w = word_index(block, m)
        for t, u in enumerate(us, start=r):
            nxt = bisect_right(cums[w], u)
            if nxt >= m:
                # cumulative sum rounded just below 1
                nxt = last_pos[w]
            path[t] = nxt
            w = (w * m + nxt) % nb
    return Realization(path=path, seed=int(seed), model_digest=model.digest(), initial=block)
