"""Deterministic PRNG for the simulation.

xoshiro256** (Blackman & Vigna, 2018) seeded through splitmix64. Pure
integer arithmetic, so streams are identical on every platform and Python
build. Every stochastic event in the engine consumes draws from a single
instance in a documented order, which is what makes replays byte-exact.
"""
from __future__ import annotations

MASK64 = (1 << 64) - 1


def _splitmix64(state: int) -> tuple[int, int]:
    state = (state + 0x9E3779B97F4A7C15) & MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return state, z ^ (z >> 31)


def _rotl(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & MASK64


class Xoshiro256:
    """xoshiro256** with a 64-bit integer seed."""

    __slots__ = ("s0", "s1", "s2", "s3", "draws")

    def __init__(self, seed: int):
        sm = seed & MASK64
        sm, self.s0 = _splitmix64(sm)
        sm, self.s1 = _splitmix64(sm)
        sm, self.s2 = _splitmix64(sm)
        sm, self.s3 = _splitmix64(sm)
        self.draws = 0

    def next_u64(self) -> int:
        s0, s1, s2, s3 = self.s0, self.s1, self.s2, self.s3
        result = (_rotl((s1 * 5) & MASK64, 7) * 9) & MASK64
        t = (s1 << 17) & MASK64
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = _rotl(s3, 45)
        self.s0, self.s1, self.s2, self.s3 = s0, s1, s2, s3
        self.draws += 1
        return result

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi], inclusive. One draw."""
        return lo + self.next_u64() % (hi - lo + 1)

    def random(self) -> float:
        """Uniform float in [0, 1). One draw."""
        return (self.next_u64() >> 11) * (2.0 ** -53)

    def uniform(self, a: float, b: float) -> float:
        return a + (b - a) * self.random()

    def getstate(self) -> tuple[int, int, int, int]:
        return (self.s0, self.s1, self.s2, self.s3)

    def setstate(self, state: tuple[int, int, int, int]) -> None:
        self.s0, self.s1, self.s2, self.s3 = state
