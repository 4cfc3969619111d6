"""Reflecting random walk on the levels 1..4 and its two-symbol event coding.

Interior levels 2 and 3 step up or down with probability 1/2 each; level 1
is always followed by 2 and level 4 by 3. The coding keeps only the
interior levels: level 2 is symbol ``s1`` (index 0) and level 3 is ``s2``
(index 1). A boundary excursion ``2, 1, 2`` becomes the event ``s1 s1`` and
``3, 4, 3`` becomes ``s2 s2``, so every coded transition has probability 1/2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .exceptions import ValidationError
from .simulator import Realization, simulate
from .state_space import StateSpace, validate_metric
from .transition import TransitionModel, validate_stochastic

__all__ = [
    "LEVELS",
    "EVENT_LABELS",
    "WalkChain",
    "WalkConfig",
    "StepTrace",
    "build_walk_chain",
    "simulate_walk",
    "encode_walk_to_events",
    "decode_events_to_walk",
    "step_function_export",
    "trace_to_csv",
    "trace_to_svg",
]

LEVELS = (1, 2, 3, 4)
EVENT_LABELS = ("s1", "s2")
_LEVEL_TO_SYMBOL = {2: 0, 3: 1}
_SYMBOL_TO_LEVEL = (2, 3)
_REFLECT = {2: 1, 3: 4}


class WalkChain(NamedTuple):
    raw_space: StateSpace
    raw_model: TransitionModel
    event_space: StateSpace
    event_model: TransitionModel


def build_walk_chain() -> WalkChain:
    """The raw four-level walk and its event-coded two-state chain.

    Raw states are indexed ``level - 1`` with metric ``|x - y|``; the coded
    chain uses the discrete metric on ``{s1, s2}``.
    """
    raw = validate_stochastic(
        [
            [0.0, 1.0, 0.0, 0.0],
            [0.5, 0.0, 0.5, 0.0],
            [0.0, 0.5, 0.0, 0.5],
            [0.0, 0.0, 1.0, 0.0],
        ]
    )
    raw_space = validate_metric(
        [[abs(a - b) for b in LEVELS] for a in LEVELS], states=[str(v) for v in LEVELS]
    )
    # P(f_i1) is the chance of (re)entering s1 next: the excursion 2,1,2 from s1
    # or the direct move 3 -> 2 from s2; likewise for s2.
    events = np.empty((2, 2))
    for i, level in enumerate(_SYMBOL_TO_LEVEL):
        row = raw.probs[level - 1]
        for j, target in enumerate(_SYMBOL_TO_LEVEL):
            if target == level:
                events[i, j] = row[_REFLECT[level] - 1]
            else:
                events[i, j] = row[target - 1]
    event_model = validate_stochastic(events, strict=True)
    event_space = validate_metric("discrete", states=EVENT_LABELS)
    return WalkChain(raw_space, raw, event_space, event_model)


def simulate_walk(N: int, seed: int, initial_level: int = 2) -> np.ndarray:
    """Raw walk levels ``X_0 .. X_{N-1}`` starting at ``initial_level``."""
    if initial_level not in LEVELS:
        raise ValidationError("InitialBlockInvalid", f"level {initial_level} not in {LEVELS}")
    chain = build_walk_chain()
    real = simulate(chain.raw_model, (initial_level - 1,), N, seed)
    return real.path + 1


def _check_walk(levels: np.ndarray) -> None:
    if levels.ndim != 1 or levels.size == 0:
        raise ValidationError("InvalidWalkPath", "walk path must be a non-empty sequence")
    if np.any((levels < 1) | (levels > 4)):
        raise ValidationError("InvalidWalkPath", "levels must lie in 1..4")
    steps = np.diff(levels)
    bad = np.flatnonzero(np.abs(steps) != 1)
    if bad.size:
        t = int(bad[0])
        raise ValidationError(
            "InvalidWalkPath",
            f"step {t}: {levels[t]} -> {levels[t + 1]} is not a unit move",
            step=t,
        )


def encode_walk_to_events(raw_path) -> np.ndarray:
    """Event symbols (0 = s1, 1 = s2) for a raw walk starting at level 2 or 3.

    A trailing boundary visit whose forced return has not happened yet is
    dropped, since its event is incomplete.
    """
    levels = np.asarray(raw_path, dtype=np.int64)
    _check_walk(levels)
    if int(levels[0]) not in _LEVEL_TO_SYMBOL:
        raise ValidationError("InvalidWalkPath", "walk must start at an interior level (2 or 3)")
    out = [_LEVEL_TO_SYMBOL[int(levels[0])]]
    for x in levels[1:].tolist():
        if x in _LEVEL_TO_SYMBOL:
            out.append(_LEVEL_TO_SYMBOL[x])
        # boundary levels are absorbed; the unit-step check already forces the return
    return np.array(out, dtype=np.int64)


def decode_events_to_walk(symbols) -> np.ndarray:
    """Inverse of :func:`encode_walk_to_events` on complete paths."""
    syms = np.asarray(symbols, dtype=np.int64)
    if syms.ndim != 1 or syms.size == 0 or np.any((syms < 0) | (syms > 1)):
        raise ValidationError("InvalidEventPath", "event symbols must be a non-empty 0/1 sequence")
    levels = [_SYMBOL_TO_LEVEL[int(syms[0])]]
    for prev, cur in zip(syms[:-1].tolist(), syms[1:].tolist()):
        here = _SYMBOL_TO_LEVEL[prev]
        if cur == prev:
            levels.append(_REFLECT[here])
        levels.append(_SYMBOL_TO_LEVEL[cur])
    return np.array(levels, dtype=np.int64)


@dataclass(frozen=True)
class WalkConfig:
    horizon: float = 60.0
    dt: float = 0.1

    def __post_init__(self):
        if not self.dt > 0 or not self.horizon > 0:
            raise ValidationError("ConfigInvalid", "horizon and dt must be positive")
        k = round(self.horizon / self.dt)
        if k < 1 or abs(k * self.dt - self.horizon) > 1e-9 * self.horizon:
            raise ValidationError(
                "ConfigInvalid", f"horizon {self.horizon} is not a multiple of dt {self.dt}"
            )

    @property
    def n_intervals(self) -> int:
        return round(self.horizon / self.dt)


def _fmt(x: float) -> str:
    return format(round(x, 12), ".12g")


@dataclass(frozen=True)
class StepTrace:
    """Piecewise-constant trace ``phi(t) = X_n`` on ``[n dt, (n + 1) dt)``."""

    config: WalkConfig
    breakpoints: tuple[tuple[float, int], ...]
    connectors: tuple[tuple[float, int, int], ...] = field(default=())

    @property
    def n_intervals(self) -> int:
        return len(self.breakpoints) - 1

    def value_at(self, t: float) -> int:
        if not 0 <= t <= self.config.horizon:
            raise ValueError(f"t={t} outside [0, {self.config.horizon}]")
        n = min(int(t / self.config.dt + 1e-9), self.n_intervals)
        return self.breakpoints[n][1]


def step_function_export(path, config: WalkConfig | None = None, connectors: bool = True) -> StepTrace:
    """Breakpoints ``(n dt, X_n)`` for ``n = 0 .. horizon / dt``.

    The last breakpoint sits at ``t = horizon`` and needs ``X_{horizon/dt}``,
    so the path must hold at least ``horizon / dt + 1`` levels. Connectors
    are the vertical segments ``(t, before, after)`` where the value jumps.
    """
    config = config or WalkConfig()
    if isinstance(path, Realization):
        # raw-model realizations hold state indices, i.e. level - 1
        levels = path.path + 1
    else:
        levels = np.asarray(path, dtype=np.int64)
    k = config.n_intervals
    if len(levels) < k + 1:
        raise ValidationError("PathTooShort", f"need {k + 1} levels, got {len(levels)}")
    vals = levels[: k + 1].tolist()
    if any(v not in LEVELS for v in vals):
        raise ValidationError("InvalidWalkPath", "levels must lie in 1..4")
    bps = tuple((round(n * config.dt, 12), v) for n, v in enumerate(vals))
    conns = ()
    if connectors:
        conns = tuple(
            (bps[n][0], vals[n - 1], vals[n]) for n in range(1, k + 1) if vals[n] != vals[n - 1]
        )
    return StepTrace(config, bps, conns)


def trace_to_csv(trace: StepTrace, header_comments: dict | None = None) -> str:
    lines = [f"# {k}={v}" for k, v in (header_comments or {}).items()]
    lines.append("t,value")
    lines.extend(f"{_fmt(t)},{v}" for t, v in trace.breakpoints)
    return "\n".join(lines) + "\n"


def trace_to_svg(
    trace: StepTrace,
    width: int = 900,
    height: int = 300,
    metadata: dict | None = None,
) -> str:
    """Self-contained SVG of the step function; jump connectors are drawn in grey."""
    pad_l, pad_r, pad_t, pad_b = 50, 20, 20, 40
    horizon = trace.config.horizon
    sx = (width - pad_l - pad_r) / horizon
    lo, hi = LEVELS[0], LEVELS[-1]
    sy = (height - pad_t - pad_b) / (hi - lo)

    def X(t):
        return f"{pad_l + t * sx:.3f}"

    def Y(v):
        return f"{pad_t + (hi - v) * sy:.3f}"

    dt = trace.config.dt
    steps = " ".join(
        f"M{X(t)} {Y(v)}H{X(min(t + dt, horizon))}" for t, v in trace.breakpoints[:-1]
    )
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
    ]
    for k, v in (metadata or {}).items():
        out.append(f"<!-- {k}={v} -->")
    out.append('<rect width="100%" height="100%" fill="white"/>')
    axis_y = Y(lo)
    out.append(
        f'<path d="M{X(0)} {pad_t}V{axis_y}H{X(horizon)}" stroke="black" fill="none" '
        'stroke-width="1"/>'
    )
    for v in LEVELS:
        out.append(
            f'<text x="{pad_l - 8}" y="{Y(v)}" font-size="12" text-anchor="end" '
            f'dominant-baseline="middle">{v}</text>'
        )
    tick = 10.0 if horizon >= 20 else horizon / 2
    n_ticks = int(round(horizon / tick))
    for i in range(n_ticks + 1):
        t = i * tick
        out.append(
            f'<text x="{X(t)}" y="{height - pad_b + 18}" font-size="12" '
            f'text-anchor="middle">{_fmt(t)}</text>'
        )
    if trace.connectors:
        conn = " ".join(f"M{X(t)} {Y(a)}V{Y(b)}" for t, a, b in trace.connectors)
        out.append(f'<path d="{conn}" stroke="#888888" fill="none" stroke-width="0.8"/>')
    out.append(f'<path d="{steps}" stroke="black" fill="none" stroke-width="1.5"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
