"""Deterministic 64-bit PRNG backing the seeded task generators.

Implements splitmix64: the state advances by the odd constant
0x9E3779B97F4A7C15 and each output is finalized with the xor-shift/multiply
mixers 0xBF58476D1CE4E5B9 and 0x94D049BB133111EB. Pure integer arithmetic
modulo 2**64, so a given seed produces the identical stream on every
platform and across process restarts, which is what makes generated tasks
reproducible byte for byte.

Range reduction uses rejection sampling, so draws are unbiased and stay
portable (no float rounding involved).
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


class SplitMix64:
    """Seeded deterministic random stream."""

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
        return z ^ (z >> 31)

    def randrange(self, n: int) -> int:
        """Uniform integer in [0, n), by rejection."""
        if n <= 0:
            raise ValueError("randrange() requires n >= 1")
        # Largest multiple of n that fits in 64 bits; values above it are rejected.
        limit = (_MASK64 + 1) - ((_MASK64 + 1) % n)
        while True:
            value = self.next_u64()
            if value < limit:
                return value % n

    def random(self) -> float:
        """Uniform float in [0, 1); used by simulations, never by generators."""
        return self.next_u64() / (_MASK64 + 1)

    def choice(self, seq):
        if not seq:
            raise ValueError("choice() on empty sequence")
        return seq[self.randrange(len(seq))]

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates shuffle."""
        for i in range(len(items) - 1, 0, -1):
            j = self.randrange(i + 1)
            items[i], items[j] = items[j], items[i]

    def sample(self, seq, k: int) -> list:
        """k distinct elements, via a partial front-loaded Fisher-Yates."""
        pool = list(seq)
        if not 0 <= k <= len(pool):
            raise ValueError(f"sample() of {k} from {len(pool)} items")
        for i in range(k):
            j = i + self.randrange(len(pool) - i)
            pool[i], pool[j] = pool[j], pool[i]
        return pool[:k]
