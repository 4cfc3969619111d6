"""SplitMix64, a counter-based 64-bit generator.

The ``i``-th output (1-based) for seed ``s`` is ``mix64(s + i * GAMMA)``
modulo ``2**64``, where ``mix64`` is the Stafford "Mix13" finaliser. The
stream is therefore a pure function of ``(seed, i)`` and is identical in
any language with 64-bit unsigned arithmetic. Reference outputs for seed
1234567 start with 6457827717110365317, 3203168211198807973,
9817491932198370423.

Uniform doubles take the top 53 bits: ``(x >> 11) * 2**-53``, in ``[0, 1)``.
"""

from __future__ import annotations

import numpy as np

__all__ = ["GAMMA", "MASK64", "mix64", "SplitMix64", "uniforms", "derive_seed"]

MASK64 = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15
_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB


def mix64(z: int) -> int:
    z &= MASK64
    z = ((z ^ (z >> 30)) * _M1) & MASK64
    z = ((z ^ (z >> 27)) * _M2) & MASK64
    return z ^ (z >> 31)


def derive_seed(seed: int, tag: int) -> int:
    """Independent sub-stream seed for a numbered purpose."""
    return mix64((seed & MASK64) ^ mix64(tag * GAMMA))


class SplitMix64:
    """Sequential view over the counter-based stream."""

    def __init__(self, seed: int):
        self.seed = int(seed) & MASK64
        self.counter = 0

    def next_u64(self) -> int:
        self.counter += 1
        return mix64(self.seed + self.counter * GAMMA)

    def random(self) -> float:
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def randbelow(self, n: int) -> int:
        """Uniform integer in ``range(n)`` by rejection on the raw 64-bit output."""
        if n < 1:
            raise ValueError("n must be positive")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % n


def uniforms(seed: int, n: int, start: int = 0) -> np.ndarray:
    """Outputs ``start + 1 .. start + n`` of the stream as doubles in ``[0, 1)``."""
    seed = np.uint64(int(seed) & MASK64)
    counters = np.arange(start + 1, start + n + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = seed + counters * np.uint64(GAMMA)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(_M1)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(_M2)
        z = z ^ (z >> np.uint64(31))
    return (z >> np.uint64(11)).astype(np.float64) * (1.0 / (1 << 53))
