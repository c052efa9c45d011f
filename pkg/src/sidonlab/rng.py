"""Seeded 64-bit PRNG with a fixed, language-independent definition.

The generator is Vigna's xorshift64* (a 64-bit linear shift-register with a
multiplicative output scramble).  The raw state update is

    x ^= x >> 12;  x ^= x << 25;  x ^= x >> 27;  output = x * 2685821657736338717

with all arithmetic mod 2**64.  The state is initialised by pushing the user
seed through one round of the splitmix64 finaliser, so that small seeds
(0, 1, 2, ...) still start from well-mixed states.  Both algorithms are
published constants-and-shifts recipes and can be reimplemented verbatim in
any language, which is what makes seeds portable.

Derived draws:

* ``below(k)`` draws uniformly from {0, ..., k-1} by rejection (discard raw
  words >= floor(2**64 / k) * k, then reduce mod k).  No modulo bias.
* fixed-size subset sampling uses a partial Fisher-Yates shuffle over the
  sorted input (``sample_indices``).
* p-random inclusion keeps an element iff the next raw word is below
  floor(p * 2**64) (``bernoulli``).
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1
_XORSHIFT_MULT = 2685821657736338717
_SPLITMIX_GAMMA = 0x9E3779B97F4A7C15


def _splitmix64(z: int) -> int:
    z = (z + _SPLITMIX_GAMMA) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


class Xorshift64Star:
    """xorshift64* stream seeded via one splitmix64 scramble of ``seed``."""

    def __init__(self, seed: int):
        if not 0 <= seed <= _MASK64:
            raise ValueError("seed must fit in 64 unsigned bits")
        state = _splitmix64(seed)
        # xorshift64* requires a nonzero state; splitmix64 maps exactly one
        # seed to zero, send it to the gamma constant instead.
        self._state = state if state != 0 else _SPLITMIX_GAMMA

    def next_u64(self) -> int:
        x = self._state
        x ^= x >> 12
        x = (x ^ (x << 25)) & _MASK64
        x ^= x >> 27
        self._state = x
        return (x * _XORSHIFT_MULT) & _MASK64

    def below(self, k: int) -> int:
        """Uniform draw from {0, ..., k-1}, rejection-sampled (no bias)."""
        if k <= 0:
            raise ValueError("below() needs k >= 1")
        limit = ((1 << 64) // k) * k
        while True:
            u = self.next_u64()
            if u < limit:
                return u % k

    def bernoulli(self, p: float) -> bool:
        """True with probability p; threshold test on one raw word."""
        if not 0.0 <= p <= 1.0:
            raise ValueError("p must lie in [0, 1]")
        threshold = int(p * (1 << 64))
        return self.next_u64() < threshold

    def sample_indices(self, n: int, m: int) -> list[int]:
        """m distinct indices from range(n), by partial Fisher-Yates.

        Consumes exactly m bounded draws; the returned list is sorted.
        """
        if not 0 <= m <= n:
            raise ValueError("need 0 <= m <= n")
        idx = list(range(n))
        for i in range(m):
            j = i + self.below(n - i)
            idx[i], idx[j] = idx[j], idx[i]
        return sorted(idx[:m])


def derive_seed(seed: int, stream: int) -> int:
    """Per-stream seed for independent trials: splitmix64(seed + stream)."""
    return _splitmix64((seed + stream) & _MASK64)
