"""Deterministic random primitives.

Everything random in this package flows through SplitMix64 so that a given
seed yields the same mask on every platform and in every implementation of
the kernels. Library-default RNGs are deliberately not used.
"""

_MASK64 = (1 << 64) - 1

_GAMMA = 0x9E3779B97F4A7C15
_MUL1 = 0xBF58476D1CE4E5B9
_MUL2 = 0x94D049BB133111EB

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3

# 2**-53; (u >> 11) * _UNIT is uniform over the 53-bit doubles in [0, 1)
_UNIT = 1.0 / 9007199254740992.0


class SplitMix64:
    """SplitMix64 stream (Steele/Lea/Flood constants)."""

    __slots__ = ("_state",)

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * _MUL1) & _MASK64
        z = ((z ^ (z >> 27)) * _MUL2) & _MASK64
        return (z ^ (z >> 31)) & _MASK64

    def next_unit(self) -> float:
        """Uniform double in [0, 1)."""
        return (self.next_u64() >> 11) * _UNIT

    def next_below(self, n: int) -> int:
        """Uniform-ish integer in [0, n) via modulo reduction (n << 2**64)."""
        return self.next_u64() % n

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates shuffle."""
        for i in range(len(items) - 1, 0, -1):
            j = self.next_below(i + 1)
            items[i], items[j] = items[j], items[i]


def fnv1a_64(data: bytes) -> int:
    """64-bit FNV-1a hash. Pure-Python reference; see _speedups for the
    compiled version used on large buffers."""
    h = _FNV_OFFSET
    for b in data:
        h = ((h ^ b) * _FNV_PRIME) & _MASK64
    return h
