"""Deterministic fair-bit source for streamed 2-adic points.

The digits of a streamed point come from SplitMix64 (Steele, Lea and Flood,
2014) run from the point's seed: word ``j`` (0-based) is the SplitMix64 output
after ``j + 1`` increments of the state, and digit ``i`` of the tail is bit
``i % 64`` of word ``i // 64``.  The generator is counter based, so the same
word can be produced for many seeds at once with numpy, which is what the
Monte Carlo layer does.
"""
import threading

import numpy as np

GOLDEN_GAMMA = 0x9E3779B97F4A7C15
MIX_1 = 0xBF58476D1CE4E5B9
MIX_2 = 0x94D049BB133111EB
MASK64 = (1 << 64) - 1


def splitmix64_word(seed, j):
    """Word ``j`` of the SplitMix64 stream started from ``seed``."""
    z = (seed + (j + 1) * GOLDEN_GAMMA) & MASK64
    z = ((z ^ (z >> 30)) * MIX_1) & MASK64
    z = ((z ^ (z >> 27)) * MIX_2) & MASK64
    return z ^ (z >> 31)


def splitmix64_words(seeds, j):
    """Vectorized :func:`splitmix64_word` over an array of seeds."""
    z = np.asarray(seeds, dtype=np.uint64) + np.uint64(((j + 1) * GOLDEN_GAMMA) & MASK64)
    z = (z ^ (z >> np.uint64(30))) * np.uint64(MIX_1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(MIX_2)
    return z ^ (z >> np.uint64(31))


class BitStream:
    """Memoized infinite bit stream of one seed.

    Words are computed on first use and stored; every index is written at
    most once with a value that depends only on the seed, so concurrent
    readers always agree.
    """

    def __init__(self, seed):
        self.seed = seed & MASK64
        self._words = []
        self._lock = threading.Lock()

    def _ensure(self, nwords):
        if len(self._words) >= nwords:
            return
        with self._lock:
            while len(self._words) < nwords:
                self._words.append(splitmix64_word(self.seed, len(self._words)))

    def bits(self, start, count):
        """Bits ``start, ..., start + count - 1`` packed LSB-first into an int."""
        if count <= 0:
            return 0
        first, last = start // 64, (start + count - 1) // 64
        self._ensure(last + 1)
        acc = 0
        for k, word in enumerate(self._words[first:last + 1]):
            acc |= word << (64 * k)
        return (acc >> (start - 64 * first)) & ((1 << count) - 1)
