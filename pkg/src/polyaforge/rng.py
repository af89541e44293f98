"""Deterministic random source with independent per-replicate streams.

xoshiro256++ over uint64, state derived from (seed, stream_id) through
numpy's SeedSequence so that streams are decorrelated and the mapping is
stable.  The same generator is re-implemented inside the numba kernels; the
two share test vectors, and a state handoff lets a Python-side RandomSource
drive a kernel deterministically.
"""

from __future__ import annotations

import numpy as np

_MASK = (1 << 64) - 1


def _rotl(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & _MASK


class RandomSource:
    """Reproducible draw sequence keyed by (seed, stream_id)."""

    def __init__(self, seed: int, stream_id: int = 0):
        self.seed = int(seed) & _MASK
        self.stream_id = int(stream_id)
        ss = np.random.SeedSequence([self.seed, self.stream_id & _MASK])
        s = ss.generate_state(4, np.uint64)
        self.state = [int(s[0]), int(s[1]), int(s[2]), int(s[3])]
        if not any(self.state):
            self.state[0] = 0x9E3779B97F4A7C15

    def spawn(self, stream_id: int) -> "RandomSource":
        return RandomSource(self.seed, stream_id)

    def u64(self) -> int:
        s0, s1, s2, s3 = self.state
        result = (_rotl((s0 + s3) & _MASK, 23) + s0) & _MASK
        t = (s1 << 17) & _MASK
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = _rotl(s3, 45)
        self.state = [s0, s1, s2, s3]
        return result

    def random(self) -> float:
        """Uniform in [0, 1) with 53 random bits."""
        return (self.u64() >> 11) * (1.0 / 9007199254740992.0)

    def randrange(self, n: int) -> int:
        """Uniform integer in [0, n); n may be an arbitrary-size int."""
        if n <= 0:
            raise ValueError("n must be positive")
        bits = n.bit_length()
        words = (bits + 63) // 64
        while True:
            x = 0
            for _ in range(words):
                x = (x << 64) | self.u64()
            x >>= words * 64 - bits
            if x < n:
                return x

    def poisson(self, lam: float) -> int:
        """Knuth's method; fine for the small parameters used here."""
        if lam <= 0:
            return 0
        L = np.exp(-lam)
        k = 0
        p = 1.0
        while True:
            p *= self.random()
            if p <= L:
                return k
            k += 1

    def choice_cumulative(self, cumweights) -> int:
        """Index i with probability proportional to the increments."""
        total = cumweights[-1]
        u = self.random() * total
        lo, hi = 0, len(cumweights) - 1
        while lo < hi:
            mid = (lo + hi) // 2
            if cumweights[mid] <= u:
                lo = mid + 1
            else:
                hi = mid
        return lo

    def numba_state(self) -> np.ndarray:
        return np.array(self.state, dtype=np.uint64)
