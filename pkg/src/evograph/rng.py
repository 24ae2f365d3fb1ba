"""Portable seeded random stream.

The generator is xoshiro256** (Blackman & Vigna), seeded by expanding a
64-bit seed through SplitMix64.  Every draw used by the simulator is built
from ``next_u64`` with integer-only rules, so the bit-stream can be
reproduced in any language:

* ``random()``      -> ``(next_u64() >> 11) * 2**-53``
* ``randbelow(n)``  -> draw ``x``; reject while ``x >= 2**64 - (2**64 % n)``;
  return ``x % n``
* ``bernoulli(p)``  -> ``random() < p`` (always consumes one draw)

Sub-streams for independent phases are obtained with :func:`derive_seed`.
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1
_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3


def splitmix64(state: int) -> tuple[int, int]:
    """Advance a SplitMix64 state; returns ``(new_state, output)``."""
    state = (state + 0x9E3779B97F4A7C15) & MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return state, z ^ (z >> 31)


def fnv1a64(data: bytes) -> int:
    h = _FNV_OFFSET
    for byte in data:
        h ^= byte
        h = (h * _FNV_PRIME) & MASK64
    return h


def derive_seed(master: int, label: str) -> int:
    """Seed for the sub-stream named ``label`` under ``master``.

    ``splitmix64(master XOR fnv1a64(label))`` output word.
    """
    _, out = splitmix64((master ^ fnv1a64(label.encode("utf-8"))) & MASK64)
    return out


def _rotl(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & MASK64


class Xoshiro256:
    """xoshiro256** generator with a small sampling toolkit."""

    def __init__(self, seed: int) -> None:
        if seed < 0 or seed > MASK64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
        state = seed
        words = []
        for _ in range(4):
            state, out = splitmix64(state)
            words.append(out)
        self._s = words

    @classmethod
    def from_state(cls, state: tuple[int, int, int, int]) -> "Xoshiro256":
        if not any(state):
            raise ValueError("xoshiro256 state must not be all zero")
        rng = cls.__new__(cls)
        rng._s = [w & MASK64 for w in state]
        return rng

    def next_u64(self) -> int:
        s0, s1, s2, s3 = self._s
        result = (_rotl((s1 * 5) & MASK64, 7) * 9) & MASK64
        t = (s1 << 17) & MASK64
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = _rotl(s3, 45)
        self._s = [s0, s1, s2, s3]
        return result

    def random(self) -> float:
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def randbelow(self, n: int) -> int:
        if n <= 0 or n > (1 << 64):
            raise ValueError(f"randbelow bound out of range: {n}")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % n

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in the closed range ``[lo, hi]``."""
        if hi < lo:
            raise ValueError(f"empty range [{lo}, {hi}]")
        return lo + self.randbelow(hi - lo + 1)

    def bernoulli(self, p: float) -> bool:
        return self.random() < p

    def getbits(self, k: int) -> int:
        """``k`` uniform bits, taken from the low end of successive words."""
        out = 0
        shift = 0
        while shift < k:
            out |= self.next_u64() << shift
            shift += 64
        return out & ((1 << k) - 1)

    def sample(self, n: int, k: int) -> list[int]:
        """``k`` distinct values from ``range(n)`` by partial Fisher-Yates."""
        if not 0 <= k <= n:
            raise ValueError(f"cannot sample {k} from {n}")
        pool = list(range(n))
        for i in range(k):
            j = i + self.randbelow(n - i)
            pool[i], pool[j] = pool[j], pool[i]
        return pool[:k]

    def getstate(self) -> tuple[int, int, int, int]:
        return tuple(self._s)  # type: ignore[return-value]
