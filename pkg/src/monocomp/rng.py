"""Platform-independent random streams.

Every sampler in the package draws from SplitMix64 (Steele, Lea and Flood,
2014; the xorshift-multiply generator used to seed the xoshiro family).  A
``(seed, stream)`` pair is hashed into a 64-bit starting state, and output
``i`` (1-based) is ``mix(state + i * GAMMA)``.  Because output ``i`` depends
only on the state and ``i``, blocks of outputs can be produced with numpy
uint64 arithmetic and match the scalar path bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

MASK64 = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15
_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB
_STREAM_SALT = 0x632BE59BD9B4E019


def mix64(z: int) -> int:
    z &= MASK64
    z = ((z ^ (z >> 30)) * _M1) & MASK64
    z = ((z ^ (z >> 27)) * _M2) & MASK64
    return z ^ (z >> 31)


def _mix64_array(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_M1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_M2)
    return z ^ (z >> np.uint64(31))


@dataclass(frozen=True)
class RngSeed:
    seed: int
    stream: int = 0

    def __post_init__(self):
        if not 0 <= self.seed <= MASK64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        if self.stream < 0:
            raise ValueError("stream id must be nonnegative")

    def substream(self, stream: int) -> "RngSeed":
        return RngSeed(self.seed, stream)


def as_seed(seed: int | RngSeed, stream: int = 0) -> RngSeed:
    return seed if isinstance(seed, RngSeed) else RngSeed(seed, stream)


class SplitMix64:
    def __init__(self, seed: int | RngSeed, stream: int = 0):
        rs = as_seed(seed, stream)
        self.state = mix64(rs.seed ^ mix64(rs.stream * GAMMA + _STREAM_SALT))
        self.counter = 0

    def next_u64(self) -> int:
        self.counter += 1
        return mix64(self.state + self.counter * GAMMA)

    def random(self) -> float:
        """Uniform double in [0, 1) with 53 random bits."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def randbelow(self, k: int) -> int:
        # multiply-shift; bias is at most k / 2**64
        return (self.next_u64() * k) >> 64

    def u64_array(self, size: int) -> np.ndarray:
        start = self.counter + 1
        self.counter += size
        i = np.arange(start, start + size, dtype=np.uint64)
        with np.errstate(over="ignore"):
            return _mix64_array(np.uint64(self.state) + i * np.uint64(GAMMA))

    def random_array(self, size: int) -> np.ndarray:
        return (self.u64_array(size) >> np.uint64(11)).astype(np.float64) * (1.0 / (1 << 53))

    def randbelow_array(self, size: int, k: int) -> np.ndarray:
        """Vectorised :meth:`randbelow` for ``k < 2**32`` (same values as the scalar path)."""
        if not 0 < k < 1 << 32:
            raise ValueError("k must be in [1, 2**32)")
        x = self.u64_array(size)
        hi = x >> np.uint64(32)
        lo = x & np.uint64(0xFFFFFFFF)
        kk = np.uint64(k)
        # (x * k) >> 64 computed from 32-bit halves without overflow
        return ((hi * kk + ((lo * kk) >> np.uint64(32))) >> np.uint64(32)).astype(np.int64)
