"""Finite evidence of chaotic behaviour in realizations and in the shift.

The witness scan is a finitisation of unpredictability: recurrence is
checked on a window of ``w`` leading symbols (exact agreement, or closeness
in the truncated sequence metric), and divergence on single positions. It produces evidence about a finite path, never a proof about
an infinite one.
"""

from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass, field

import numpy as np

from ._config import enumeration_budget
from .exceptions import EnumerationBudgetExceeded, ValidationError
from .sequence_space import (
    DEFAULT_DEPTH,
    Cylinder,
    check_separation_condition,
    shift,
)
from .state_space import StateSpace, min_pairwise_distance
from .transition import TransitionModel, word_index

__all__ = [
    "DEFAULT_WINDOW",
    "Witness",
    "WitnessReport",
    "find_witnesses",
    "recurrence_shifts",
    "default_epsilon0",
    "ArcCoverageReport",
    "arc_coverage",
    "word_is_admissible",
    "de_bruijn",
    "DevaneyCertificate",
    "devaney_certificate",
    "divergence_locator",
    "enumeration_budget",
]

DEFAULT_WINDOW = 10


def _path_array(path) -> np.ndarray:
    arr = np.asarray(getattr(path, "path", path), dtype=np.int64)
    if arr.ndim != 1:
        raise ValidationError("PathInvalid", "a path must be one-dimensional")
    return arr


def _digest(path) -> str:
    return hashlib.sha256(np.ascontiguousarray(path, dtype="<i8").tobytes()).hexdigest()[:16]


def default_epsilon0(space: StateSpace) -> float:
    """Half the smallest distance between distinct states."""
    return min_pairwise_distance(space) / 2


@dataclass(frozen=True)
class Witness:
    zeta: int
    eta: int
    window: int


@dataclass(frozen=True)
class WitnessReport:
    epsilon0: float
    window: int
    witnesses: tuple[Witness, ...]
    realization_digest: str
    recurrences: int
    recurrence: str = "equality"

    def __len__(self):
        return len(self.witnesses)

    def to_dict(self):
        return {
            "epsilon0": self.epsilon0,
            "window": self.window,
            "realization_digest": self.realization_digest,
            "recurrences": self.recurrences,
            "recurrence": self.recurrence,
            "witnesses": [
                {"zeta": w.zeta, "eta": w.eta, "window": w.window} for w in self.witnesses
            ],
        }


def _first_divergence(arr, far, zeta, lo, hi, chunk=256):
    """Smallest ``eta`` in ``[lo, hi)`` with ``far[arr[zeta + eta], arr[eta]]``."""
    start = lo
    while start < hi:
        stop = min(hi, start + chunk)
        hits = np.flatnonzero(far[arr[zeta + start:zeta + stop], arr[start:stop]])
        if hits.size:
            return start + int(hits[0])
        start, chunk = stop, chunk * 2
    return None


def recurrence_shifts(path, space: StateSpace, window: int, mode: str = "equality",
                      tolerance: float | None = None) -> np.ndarray:
    """Shifts ``c >= 1`` at which the leading ``window`` symbols recur.

    ``mode="equality"`` asks for ``path[c + i] == path[i]`` for ``i < window``.
    ``mode="delta"`` asks for the depth-``window`` truncated distance between
    the shifted and unshifted sequences to be below ``tolerance`` (default
    ``min_pair * 2**-window``, which makes the two modes agree).
    """
    arr = _path_array(path)
    N = len(arr)
    if mode == "equality":
        windows = np.lib.stride_tricks.sliding_window_view(arr, window)
        return np.flatnonzero(np.all(windows[1:] == arr[:window], axis=1)) + 1
    if mode != "delta":
        raise ValidationError("RecurrenceModeInvalid", f"unknown recurrence mode {mode!r}")
    if tolerance is None:
        tolerance = min_pairwise_distance(space) * 2.0**-window
    if not tolerance > 0:
        raise ValidationError("ThresholdInvalid", f"tolerance must be positive, got {tolerance}")
    n = N - window
    total = np.zeros(n)
    # smallest weights first keeps the float sum tight
    for k in reversed(range(window)):
        total += space.metric[arr[1 + k:n + 1 + k], arr[k]] * 2.0 ** -(k + 1)
    return np.flatnonzero(total < tolerance) + 1


def find_witnesses(
    path,
    space: StateSpace,
    window: int = DEFAULT_WINDOW,
    epsilon0: float | None = None,
    max_witnesses: int | None = None,
    recurrence: str = "equality",
    tolerance: float | None = None,
) -> WitnessReport:
    """Scan shifts in increasing order for recurrence followed by divergence.

    The recurrence shifts ``c_1 < c_2 < ...`` come from
    :func:`recurrence_shifts`. Shift ``c_k`` becomes a witness when some
    ``eta`` in ``[c_{k-1}, c_k)`` (``c_0 = 1``) with ``c_k + eta < N`` has
    ``d(path[c_k + eta], path[eta]) >= epsilon0``; the smallest such ``eta``
    is recorded.

    The divergence ranges are disjoint and move right with ``k``, so both
    ``zeta`` and ``eta`` increase strictly across the report. They do not
    depend on ``epsilon0`` either, which makes the witness shifts for a
    larger threshold a subset of those for a smaller one.
    """
    arr = _path_array(path)
    N = len(arr)
    if window < 1:
        raise ValidationError("WindowInvalid", f"window must be >= 1, got {window}")
    if 2 * window > N:
        raise ValidationError("WindowTooLarge", f"2 * {window} exceeds path length {N}")
    if epsilon0 is None:
        epsilon0 = default_epsilon0(space)
    if not epsilon0 > 0:
        raise ValidationError("ThresholdInvalid", f"epsilon0 must be positive, got {epsilon0}")
    if epsilon0 > space.diameter:
        raise ValidationError(
            "ThresholdAboveDiameter",
            f"epsilon0 {epsilon0} exceeds the state diameter {space.diameter}",
        )
    if arr.size and (arr.min() < 0 or arr.max() >= space.m):
        raise ValidationError("SymbolOutOfRange", f"path symbols must lie in 0..{space.m - 1}")

    far = space.metric >= epsilon0
    recurrences = recurrence_shifts(arr, space, window, recurrence, tolerance)

    found: list[Witness] = []
    prev = 1
    for zeta in recurrences.tolist():
        if max_witnesses is not None and len(found) >= max_witnesses:
            break
        eta = _first_divergence(arr, far, zeta, prev, min(zeta, N - zeta))
        if eta is not None:
            found.append(Witness(zeta, eta, window))
        prev = zeta
    return WitnessReport(
        float(epsilon0), window, tuple(found), _digest(arr), len(recurrences), recurrence
    )


def word_is_admissible(word, model: TransitionModel) -> bool:
    """True when every transition inside ``word`` has positive probability."""
    r, m = model.order, model.m
    for t in range(r, len(word)):
        if model.probs[word_index(word[t - r:t], m), word[t]] <= 0:
            return False
    return True


@dataclass(frozen=True)
class ArcCoverageReport:
    word_length: int
    positive_words: int
    positive_found: int
    zero_words: int
    missing: tuple[tuple[int, ...], ...]
    forbidden_found: tuple[tuple[int, ...], ...]
    counts: dict = field(repr=False, default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.missing and not self.forbidden_found

    def to_dict(self):
        return {
            "word_length": self.word_length,
            "positive_words": self.positive_words,
            "positive_found": self.positive_found,
            "zero_words": self.zero_words,
            "missing": [list(w) for w in self.missing],
            "forbidden_found": [list(w) for w in self.forbidden_found],
            "passed": self.passed,
        }


def arc_coverage(path, model: TransitionModel, L: int) -> ArcCoverageReport:
    """Which length-``L`` words occur in ``path``.

    Words are split into admissible ones, which a long enough realization
    contains, and words containing a zero-probability transition, which no
    realization may contain.
    """
    arr = _path_array(path)
    m = model.m
    if L < 1 or len(arr) < L:
        raise ValidationError("WordLengthInvalid", f"need 1 <= L <= {len(arr)}, got {L}")
    if m ** L > enumeration_budget():
        raise EnumerationBudgetExceeded(f"{m}**{L} words exceed the enumeration budget")
    codes = np.zeros(len(arr) - L + 1, dtype=np.int64)
    for k in range(L):
        codes = codes * m + arr[k:len(arr) - L + 1 + k]
    occ = np.bincount(codes, minlength=m ** L)

    missing, forbidden, counts = [], [], {}
    n_pos = n_found = 0
    for code, word in enumerate(itertools.product(range(m), repeat=L)):
        c = int(occ[code])
        counts[word] = c
        if word_is_admissible(word, model):
            n_pos += 1
            if c:
                n_found += 1
            else:
                missing.append(word)
        elif c:
            forbidden.append(word)
    return ArcCoverageReport(
        L, n_pos, n_found, m ** L - n_pos, tuple(missing), tuple(forbidden), counts
    )


def de_bruijn(m: int, n: int) -> list[int]:
    """Cyclic de Bruijn sequence B(m, n) of length ``m**n``.

    Concatenates, in lexicographic order, the Lyndon words whose length
    divides ``n`` (Fredricksen-Kessler-Maiorana).
    """
    a = [0] * (m * n)
    seq: list[int] = []

    def db(t, p):
        if t > n:
            if n % p == 0:
                seq.extend(a[1:p + 1])
        else:
            a[t] = a[t - p]
            db(t + 1, p)
            for j in range(a[t - p] + 1, m):
                a[t] = j
                db(t + 1, t)

    db(1, 1)
    return seq


@dataclass(frozen=True)
class DevaneyCertificate:
    depth: int
    truncation_depth: int
    periodic_density_pass: bool
    transitivity_pass: bool
    sensitivity_constant: float
    transitivity_witness: tuple[int, ...] = field(repr=False)
    periodic_points: dict = field(repr=False)

    @property
    def passed(self) -> bool:
        return self.periodic_density_pass and self.transitivity_pass and self.sensitivity_constant > 0

    def to_dict(self):
        return {
            "depth": self.depth,
            "truncation_depth": self.truncation_depth,
            "periodic_density_pass": self.periodic_density_pass,
            "transitivity_pass": self.transitivity_pass,
            "sensitivity_constant": self.sensitivity_constant,
            "transitivity_witness": list(self.transitivity_witness),
            "passed": self.passed,
        }


def _periodic_word(block, K):
    reps = -(-K // len(block))
    return (tuple(block) * reps)[:K]


def devaney_certificate(
    space: StateSpace, n: int, K: int = DEFAULT_DEPTH
) -> DevaneyCertificate:
    """Resolution-``n`` evidence for the three Devaney ingredients of the shift.

    * periodic density: each depth-``n`` cylinder ``w`` contains the periodic
      point ``www...``, whose ``n``-fold shift equals itself on the aligned
      truncation;
    * transitivity: a de Bruijn word of length ``m**n + n - 1`` passes through
      every depth-``n`` cylinder;
    * sensitivity: the degree-``n`` separation constant.
    """
    m = space.m
    if n < 1:
        raise ValidationError("DepthInvalid", f"depth must be >= 1, got {n}")
    if K < 2 * n:
        raise ValidationError("DepthTooSmall", f"truncation {K} must be at least {2 * n}")
    if m ** n > enumeration_budget():
        raise EnumerationBudgetExceeded(f"{m}**{n} prefixes exceed the enumeration budget")

    periodic = {}
    density_ok = True
    for w in itertools.product(range(m), repeat=n):
        point = _periodic_word(w, K)
        image = point
        for _ in range(n):
            image = shift(image)
        ok = Cylinder(w).contains(point) and image == point[: K - n]
        density_ok &= ok
        periodic[w] = point

    cyc = de_bruijn(m, n)
    witness = tuple(cyc + cyc[: n - 1])
    factors = {witness[i:i + n] for i in range(len(witness) - n + 1)}
    transitive_ok = len(witness) == m ** n + n - 1 and len(factors) == m ** n

    sep = check_separation_condition(space, n)
    return DevaneyCertificate(
        n, K, density_ok, transitive_ok, sep.epsilon0, witness, periodic
    )


def divergence_locator(path_a, path_b, space: StateSpace, epsilon0: float) -> int | None:
    """First index where the two paths are at least ``epsilon0`` apart."""
    a, b = _path_array(path_a), _path_array(path_b)
    if len(a) != len(b):
        raise ValidationError("LengthMismatch", f"path lengths {len(a)} and {len(b)} differ")
    hits = np.flatnonzero(space.metric[a, b] >= epsilon0)
    return int(hits[0]) if hits.size else None
