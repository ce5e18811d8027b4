"""Seedable MT19937 generator, the sole source of randomness in this package.

Every stochastic routine in the library draws from a :class:`Prng` passed in
by the caller, so a run is fully determined by its seed.  The draw order of
each routine is documented and stable; changing it would silently change
every seeded result, so it is treated as part of the public contract.
"""

from __future__ import annotations

_N = 624
_M = 397
_MATRIX_A = 0x9908B0DF
_UPPER_MASK = 0x80000000
_LOWER_MASK = 0x7FFFFFFF
_INIT_MULTIPLIER = 1812433253
_WORD_MASK = 0xFFFFFFFF

_TWO_32 = 4294967296.0  # 2**32 as a float


class Prng:
    """Mersenne Twister (MT19937) with the classic Knuth-style scalar seeding.

    ``next_u32`` yields the standard tempered 32-bit word stream; with seed
    5489 the first word is 3499211612, matching the reference generator.
    Doubles are derived as ``word / 2**32`` (half-open ``[0, 1)``).
    """

    __slots__ = ("seed", "_state", "_index")

    def __init__(self, seed: int) -> None:
        if isinstance(seed, bool) or not isinstance(seed, int):
            raise ValueError(f"seed must be an integer, got {seed!r}")
        if not 0 <= seed < 2**32:
            raise ValueError(f"seed must be an unsigned 32-bit integer, got {seed}")
        self.seed = seed
        state = [0] * _N
        state[0] = seed
        for i in range(1, _N):
            prev = state[i - 1]
            state[i] = (_INIT_MULTIPLIER * (prev ^ (prev >> 30)) + i) & _WORD_MASK
        self._state = state
        self._index = _N  # forces a twist on the first draw

    def clone(self) -> "Prng":
        """Independent copy that will emit the same future sequence."""
        other = object.__new__(Prng)
        other.seed = self.seed
        other._state = list(self._state)
        other._index = self._index
        return other

    def _twist(self) -> None:
        state = self._state
        for i in range(_N):
            y = (state[i] & _UPPER_MASK) | (state[(i + 1) % _N] & _LOWER_MASK)
            state[i] = state[(i + _M) % _N] ^ (y >> 1) ^ (_MATRIX_A if y & 1 else 0)
        self._index = 0

    def next_u32(self) -> int:
        """Next raw 32-bit word."""
        if self._index >= _N:
            self._twist()
        y = self._state[self._index]
        self._index += 1
        y ^= y >> 11
        y ^= (y << 7) & 0x9D2C5680
        y ^= (y << 15) & 0xEFC60000
        y ^= y >> 18
        return y

    def next_unit(self) -> float:
        """Next double in [0, 1), computed as ``next_u32() / 2**32``."""
        return self.next_u32() / _TWO_32

    def next_symmetric(self) -> float:
        """Next double in [-1, 1), computed as ``2 * next_unit() - 1``."""
        return 2.0 * self.next_unit() - 1.0

    def __repr__(self) -> str:
        return f"Prng(seed={self.seed})"
