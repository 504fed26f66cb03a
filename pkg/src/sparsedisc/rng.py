"""Deterministic 64-bit random generator.

splitmix64: same seed gives the same stream on every platform, which keeps
generated fixtures and acceptance runs bit-reproducible.
"""
from __future__ import annotations

_MASK = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int = 0):
        self._state = seed & _MASK

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def randrange(self, n: int) -> int:
        """Uniform integer in [0, n) by rejection, n >= 1."""
        if n <= 0:
            raise ValueError("randrange needs n >= 1")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % n

    def bernoulli(self, num: int, den: int) -> bool:
        """True with probability num/den, decided by exact integer compare."""
        if den <= 0 or num < 0:
            raise ValueError("probability must be a non-negative fraction")
        return self.next_u64() * den < num * (1 << 64)

    def sample(self, population: list, k: int) -> list:
        """k distinct elements, order of first appearance preserved."""
        if k > len(population):
            raise ValueError("sample larger than population")
        pool = list(population)
        out = []
        for _ in range(k):
            i = self.randrange(len(pool))
            out.append(pool.pop(i))
        return out

    def shuffle(self, items: list) -> None:
        for i in range(len(items) - 1, 0, -1):
            j = self.randrange(i + 1)
            items[i], items[j] = items[j], items[i]
