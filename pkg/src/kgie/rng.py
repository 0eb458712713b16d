"""SplitMix64 pseudo-random generator.

Benchmark generation must be byte-identical across runs, Python versions,
and reimplementations in other languages, so it uses SplitMix64 (Steele,
Lea & Flood, "Fast splittable pseudorandom number generators", OOPSLA
2014) rather than the interpreter's default generator.  The algorithm is
a 64-bit counter hashed through two xor-shift-multiply rounds; bounded
draws use rejection sampling so results stay exact and portable.
"""

from __future__ import annotations

from typing import Sequence, TypeVar

_MASK = (1 << 64) - 1
T = TypeVar("T")


class SplitMix64:
    def __init__(self, seed: int) -> None:
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def randbelow(self, n: int) -> int:
        """Uniform integer in [0, n) via rejection sampling."""
        if n <= 0:
            raise ValueError("randbelow needs a positive bound")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            value = self.next_u64()
            if value < limit:
                return value % n

    def randint(self, low: int, high: int) -> int:
        """Uniform integer in [low, high], both ends inclusive."""
        if high < low:
            raise ValueError("empty range")
        return low + self.randbelow(high - low + 1)

    def random(self) -> float:
        """Uniform float in [0, 1) with 53 bits of precision."""
        return (self.next_u64() >> 11) / float(1 << 53)

    def choice(self, seq: Sequence[T]) -> T:
        if not seq:
            raise ValueError("choice from an empty sequence")
        return seq[self.randbelow(len(seq))]

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates shuffle."""
        for i in range(len(items) - 1, 0, -1):
            j = self.randbelow(i + 1)
            items[i], items[j] = items[j], items[i]

    def sample(self, seq: Sequence[T], k: int) -> list[T]:
        """k distinct items, order determined by the generator."""
        if k > len(seq):
            raise ValueError("sample larger than population")
        pool = list(seq)
        out: list[T] = []
        for _ in range(k):
            idx = self.randbelow(len(pool))
            out.append(pool.pop(idx))
        return out
