"""Prime generation: plain and segmented sieves of Eratosthenes.

Limits up to SEGMENT_THRESHOLD are handled by one bytearray sieve; larger
limits switch to a segmented sieve (fixed-size windows marked with base
primes up to sqrt(limit)) so that desk-scale limits around 10**6 to 10**8
run in seconds without allocating one flag per integer.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

SEGMENT_THRESHOLD = 1 << 20
SEGMENT_SIZE = 1 << 16


@dataclass(frozen=True)
class PrimePool:
    """All primes up to ``limit``, sorted ascending."""

    limit: int
    primes: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.primes)


def _simple_sieve(n: int) -> list[int]:
    if n < 2:
        return []
    flags = bytearray(b"\x01") * (n + 1)
    flags[0:2] = b"\x00\x00"
    for p in range(2, isqrt(n) + 1):
        if flags[p]:
            start = p * p
            flags[start :: p] = b"\x00" * len(range(start, n + 1, p))
    return [i for i in range(2, n + 1) if flags[i]]


def _segmented_primes(lo: int, hi: int, base: list[int]) -> list[int]:
    """Primes in the closed range [lo, hi]; base must cover sqrt(hi)."""
    out = []
    lo = max(lo, 2)
    while lo <= hi:
        seg_hi = min(lo + SEGMENT_SIZE - 1, hi)
        flags = bytearray(b"\x01") * (seg_hi - lo + 1)
        for p in base:
            if p * p > seg_hi:
                break
            start = max(p * p, ((lo + p - 1) // p) * p)
            for mult in range(start, seg_hi + 1, p):
                flags[mult - lo] = 0
        out.extend(lo + i for i, f in enumerate(flags) if f and lo + i >= 2)
        lo = seg_hi + 1
    return out


def primes_up_to(n: int) -> PrimePool:
    """Pool of every prime in [2, n]; n >= 1 (n = 1 gives an empty pool)."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    if n <= SEGMENT_THRESHOLD:
        return PrimePool(limit=n, primes=tuple(_simple_sieve(n)))
    base = _simple_sieve(isqrt(n))
    primes = base + _segmented_primes(base[-1] + 1 if base else 2, n, base)
    return PrimePool(limit=n, primes=tuple(primes))


def primes_in_interval(lo: int, hi: int) -> list[int]:
    """Primes q with lo < q <= hi (half-open on the left)."""
    if lo > hi:
        raise ValueError(f"empty-order interval: lo={lo} > hi={hi}")
    if hi < 2 or lo >= hi:
        return []
    base = _simple_sieve(isqrt(hi))
    return [q for q in _segmented_primes(lo + 1, hi, base) if q > lo]
