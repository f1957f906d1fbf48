"""Seeded SplitMix64 stream used by every randomized routine.

The generator is counter based: draw number ``i`` (0-based) of stream ``seed`` is

    z = (seed + (i + 1) * 0x9E3779B97F4A7C15) mod 2**64
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 mod 2**64
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB mod 2**64
    z =  z ^ (z >> 31)

and a value below ``k`` is taken from the top 32 bits as ``((z >> 32) * k) >> 32``.
The bias of that reduction is below k / 2**32. Because draw ``i`` depends only on
``(seed, i)``, the scalar path and the vectorized numpy path agree bit for bit and
any index range of a stream can be regenerated independently (used to split
sampled scans across workers).
"""
from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15
_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB

DEFAULT_SEED = 20190101


def _mix(z: int) -> int:
    z = ((z ^ (z >> 30)) * _M1) & MASK64
    z = ((z ^ (z >> 27)) * _M2) & MASK64
    return z ^ (z >> 31)


def draw(seed: int, index: int) -> int:
    """Raw 64-bit output number ``index`` of stream ``seed``."""
    return _mix((seed + (index + 1) * GAMMA) & MASK64)


def below(seed: int, index: int, k: int) -> int:
    return ((draw(seed, index) >> 32) * k) >> 32


def uniform_ints(seed: int, start: int, count: int, k: int) -> np.ndarray:
    """Draws ``start .. start+count-1`` of stream ``seed`` reduced to ``[0, k)``."""
    if not 1 <= k < (1 << 31):
        raise ValueError(f"k out of range: {k}")
    idx = np.arange(start + 1, start + count + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = np.uint64(seed & MASK64) + idx * np.uint64(GAMMA)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(_M1)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(_M2)
        z = z ^ (z >> np.uint64(31))
        out = ((z >> np.uint64(32)) * np.uint64(k)) >> np.uint64(32)
    return out.astype(np.int64)


class SplitMix64:
    """Sequential view of a stream, for code that just wants "the next value"."""

    def __init__(self, seed: int = DEFAULT_SEED):
        self.seed = seed & MASK64
        self.index = 0

    def next_u64(self) -> int:
        out = draw(self.seed, self.index)
        self.index += 1
        return out

    def below(self, k: int) -> int:
        return ((self.next_u64() >> 32) * k) >> 32
