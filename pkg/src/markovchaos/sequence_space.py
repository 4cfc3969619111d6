"""Truncated symbol sequences, cylinder sets and the left shift.

Infinite sequences are handled through depth-``K`` truncations. Every
distance carries a tail bound ``diam(S) * 2**-K`` that covers the symbols
beyond the truncation.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from ._config import enumeration_budget
from .exceptions import EnumerationBudgetExceeded, ValidationError
from .state_space import StateSpace, min_pairwise_distance

__all__ = [
    "DEFAULT_DEPTH",
    "Cylinder",
    "Distance",
    "DiameterReport",
    "SeparationCertificate",
    "CoverageReport",
    "delta_metric",
    "shift",
    "cylinder_diameter",
    "cylinder_distance",
    "check_diameter_condition",
    "check_separation_condition",
    "similarity_coverage",
]

DEFAULT_DEPTH = 32


class Distance(NamedTuple):
    value: float
    tail_bound: float

    @property
    def upper(self) -> float:
        return self.value + self.tail_bound


@dataclass(frozen=True)
class Cylinder:
    """All sequences starting with ``prefix``; the empty prefix is the whole space."""

    prefix: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(int(s) for s in self.prefix))

    @property
    def depth(self) -> int:
        return len(self.prefix)

    def contains(self, seq) -> bool:
        n = self.depth
        return len(seq) >= n and tuple(int(s) for s in seq[:n]) == self.prefix

    def extend(self, symbol: int) -> "Cylinder":
        return Cylinder(self.prefix + (int(symbol),))


def _as_word(seq, m: int | None = None) -> tuple[int, ...]:
    word = tuple(int(s) for s in seq)
    if m is not None and any(not 0 <= s < m for s in word):
        raise ValidationError("SymbolOutOfRange", f"symbols must lie in 0..{m - 1}")
    return word


def delta_metric(a, b, space: StateSpace) -> Distance:
    """Truncated sequence distance ``sum_k d(a_k, b_k) / 2**k`` (k from 1).

    Each summand is an exact power-of-two scaling, and the sum is taken with
    ``math.fsum`` so the result is correctly rounded.
    """
    a, b = _as_word(a, space.m), _as_word(b, space.m)
    if len(a) != len(b):
        raise ValidationError("DepthMismatch", f"depths {len(a)} and {len(b)} differ")
    d = space.metric
    value = math.fsum(math.ldexp(d[x, y], -k) for k, (x, y) in enumerate(zip(a, b), 1))
    return Distance(value, math.ldexp(space.diameter, -len(a)))


def shift(seq) -> tuple[int, ...]:
    """Drop the first symbol."""
    word = _as_word(seq)
    if len(word) < 2:
        raise ValidationError("SequenceTooShort", "shift needs a sequence of length >= 2")
    return word[1:]


def cylinder_diameter(cyl: Cylinder, space: StateSpace, K: int = DEFAULT_DEPTH) -> float:
    """Largest truncated distance between two depth-``K`` members of ``cyl``.

    Beyond the prefix each coordinate can independently realise the state
    diameter, so the maximum is ``diam(S) * (2**-n - 2**-K)``.
    """
    n = cyl.depth
    if K < n:
        raise ValidationError("DepthTooSmall", f"truncation {K} below cylinder depth {n}")
    return space.diameter * (math.ldexp(1.0, -n) - math.ldexp(1.0, -K))


def cylinder_distance(p, q, space: StateSpace) -> float:
    """Distance between the cylinders of two equal-length prefixes.

    The infimum is reached by giving both members the same suffix, leaving
    only the prefix terms.
    """
    return delta_metric(p, q, space).value


@dataclass(frozen=True)
class DiameterReport:
    depth: int
    maxima: tuple[float, ...]
    limit_maxima: tuple[float, ...]
    ratios: tuple[float, ...]
    tail_bound: float
    passed: bool

    def to_dict(self):
        return {
            "truncation_depth": self.depth,
            "maxima": list(self.maxima),
            "limit_maxima": list(self.limit_maxima),
            "ratios": list(self.ratios),
            "tail_bound": self.tail_bound,
            "passed": self.passed,
        }


def check_diameter_condition(
    space: StateSpace, n_max: int, K: int = DEFAULT_DEPTH
) -> DiameterReport:
    """Maximum cylinder diameter for each depth ``1..n_max``.

    ``maxima`` are the depth-``K`` truncated values; ``limit_maxima`` are the
    diameters in the full sequence space (``diam(S) * 2**-n``), each lying in
    ``[maxima[n], maxima[n] + tail_bound]``. Decay is checked on the limit
    values, whose consecutive ratio is exactly one half.
    """
    if n_max < 1 or K < n_max:
        raise ValidationError("DepthTooSmall", f"need 1 <= n_max <= K, got {n_max}, {K}")
    maxima, limits = [], []
    for n in range(1, n_max + 1):
        # every depth-n prefix has the same diameter, so one representative suffices
        maxima.append(cylinder_diameter(Cylinder((0,) * n), space, K))
        limits.append(math.ldexp(space.diameter, -n))
    ratios = tuple(limits[i + 1] / limits[i] for i in range(len(limits) - 1))
    tail = math.ldexp(space.diameter, -K)
    passed = (
        all(r == 0.5 for r in ratios)
        and all(x > y for x, y in zip(maxima, maxima[1:]))
        and all(lo <= hi <= lo + tail for lo, hi in zip(maxima, limits))
    )
    return DiameterReport(K, tuple(maxima), tuple(limits), ratios, tail, passed)


@dataclass(frozen=True)
class SeparationCertificate:
    """Separation of depth-``degree`` cylinders.

    ``epsilon0`` is the smallest distance between two distinct cylinders, so
    every cylinder is at least that far from every other one.
    ``epsilon0_existential`` is the largest constant for which each cylinder
    has *some* partner at that distance; ``witnesses`` maps each prefix to
    the lexicographically smallest partner attaining its maximum.
    """

    degree: int
    epsilon0: float
    epsilon0_existential: float
    witnesses: dict = field(repr=False)
    passed: bool

    def to_dict(self):
        return {
            "degree": self.degree,
            "epsilon0": self.epsilon0,
            "epsilon0_existential": self.epsilon0_existential,
            "passed": self.passed,
            "witnesses": {
                ",".join(map(str, k)): list(v) for k, v in sorted(self.witnesses.items())
            },
        }


def check_separation_condition(
    space: StateSpace, n: int, budget: int | None = None
) -> SeparationCertificate:
    """Certificate for the separation condition of degree ``n``."""
    if n < 1:
        raise ValidationError("DegreeInvalid", f"degree must be >= 1, got {n}")
    m = space.m
    limit = enumeration_budget() if budget is None else budget
    if m ** n > limit:
        raise EnumerationBudgetExceeded(f"{m}**{n} prefixes exceed budget {limit}")
    d = space.metric
    # per-symbol farthest partner; ties go to the smallest index
    far = [int(np.argmax(d[i])) for i in range(m)]
    witnesses = {}
    best_min = math.inf
    for prefix in itertools.product(range(m), repeat=n):
        partner = tuple(far[s] for s in prefix)
        witnesses[prefix] = partner
        best_min = min(best_min, cylinder_distance(prefix, partner, space))
    # closest distinct cylinders differ only in the last coordinate
    eps0 = math.ldexp(min_pairwise_distance(space), -n)
    return SeparationCertificate(n, eps0, best_min, witnesses, eps0 > 0)


@dataclass(frozen=True)
class CoverageReport:
    prefix: tuple[int, ...]
    depth: int
    expected: int
    covered: int
    missing: tuple[tuple[int, ...], ...]

    @property
    def passed(self) -> bool:
        return not self.missing

    def to_dict(self):
        return {
            "prefix": list(self.prefix),
            "truncation_depth": self.depth,
            "expected_words": self.expected,
            "covered_words": self.covered,
            "missing": [list(w) for w in self.missing],
            "passed": self.passed,
        }


def similarity_coverage(cyl: Cylinder, K: int, m: int) -> CoverageReport:
    """Check by enumeration that ``shift**n`` maps the cylinder onto every word.

    All depth-``K`` members of the depth-``n`` cylinder are shifted ``n``
    times and compared against the full set of depth-``K - n`` words.
    """
    n = cyl.depth
    if K <= n:
        raise ValidationError("DepthTooSmall", f"truncation {K} must exceed depth {n}")
    if any(not 0 <= s < m for s in cyl.prefix):
        raise ValidationError("SymbolOutOfRange", f"prefix symbols must lie in 0..{m - 1}")
    images = set()
    for suffix in itertools.product(range(m), repeat=K - n):
        member = cyl.prefix + suffix
        for _ in range(n):
            member = shift(member)
        images.add(member)
    missing = tuple(
        w for w in itertools.product(range(m), repeat=K - n) if w not in images
    )
    return CoverageReport(cyl.prefix, K, m ** (K - n), len(images), missing)
