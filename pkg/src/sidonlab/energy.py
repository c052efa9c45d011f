"""Exact additive/multiplicative energy, sumsets/productsets, expectations.

The energy of a set A under an operation o is the number of ordered
quadruples (a, b, c, d) in A^4 with a o b = c o d.  It is computed exactly
as sum_s r(s)^2 where r(s) counts ordered pairs producing s; the histogram
is built either with a dict (small inputs) or with numpy bincount over
chunked outer sums (large additive inputs).  Both routes are exact integer
arithmetic; energy <= |A|^3 always, so 64-bit accumulators never overflow
below |A| ~ 2 * 10^6.

Trivial quadruples are those with {a,b} = {c,d} as multisets; there are
exactly 2|A|^2 - |A| of them, so a set is operation-Sidon iff its energy
equals that floor.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np

from .groundset import INT64_MAX, GroundSet

_NUMPY_MIN = 1500  # below this a dict histogram is faster than array setup
_CHUNK_ELEMS = 1 << 23


class Mode(enum.Enum):
    ADDITIVE = "additive"
    MULTIPLICATIVE = "multiplicative"

    def combine(self, a: int, b: int) -> int:
        return a + b if self is Mode.ADDITIVE else a * b

    @classmethod
    def parse(cls, text: "str | Mode") -> "Mode":
        if isinstance(text, Mode):
            return text
        try:
            return cls(text)
        except ValueError:
            raise ValueError(f"mode must be 'additive' or 'multiplicative', got {text!r}") from None


def _check_overflow(ground: GroundSet, mode: Mode) -> None:
    if not ground.elements:
        return
    top = ground.elements[-1]
    worst = top + top if mode is Mode.ADDITIVE else top * top
    if worst > INT64_MAX:
        raise OverflowError(f"{mode.value} combination of {top} exceeds the signed 64-bit range")


def trivial_quadruple_count(size: int) -> int:
    return 2 * size * size - size


def combined_set(ground: GroundSet, mode: Mode) -> GroundSet:
    """The sumset A+A or productset AA as a new (unlabelled) ground set."""
    mode = Mode.parse(mode)
    _check_overflow(ground, mode)
    xs = ground.elements
    tag = "sumset" if mode is Mode.ADDITIVE else "productset"
    prov = f"{tag} of {ground.provenance}" if ground.provenance else tag
    if len(xs) >= _NUMPY_MIN and mode is Mode.ADDITIVE:
        hit, lo = _numpy_sum_hits(xs)
        values = np.flatnonzero(hit) + lo
        return GroundSet(elements=tuple(int(v) for v in values), provenance=prov)
    out = set()
    for i, a in enumerate(xs):
        for b in xs[i:]:
            out.add(mode.combine(a, b))
    return GroundSet(elements=tuple(sorted(out)), provenance=prov)


def combined_set_size(ground: GroundSet, mode: Mode) -> int:
    """|A+A| or |AA| without materialising the GroundSet (big sweeps)."""
    mode = Mode.parse(mode)
    _check_overflow(ground, mode)
    xs = ground.elements
    if len(xs) >= _NUMPY_MIN and mode is Mode.ADDITIVE:
        hit, _ = _numpy_sum_hits(xs)
        return int(hit.sum())
    return len(combined_set(ground, mode).elements)


def _numpy_sum_hits(xs) -> tuple[np.ndarray, int]:
    """Boolean table over [2*min, 2*max] marking attained pairwise sums."""
    lo, hi = 2 * xs[0], 2 * xs[-1]
    arr = np.asarray(xs, dtype=np.int64)
    hit = np.zeros(hi - lo + 1, dtype=bool)
    rows = max(1, _CHUNK_ELEMS // len(arr))
    for i in range(0, len(arr), rows):
        block = (arr[i : i + rows, None] + arr[None, :]).ravel()
        hit[block - lo] = True
    return hit, lo


def energy(ground: GroundSet, mode: Mode) -> int:
    """Number of ordered quadruples (a,b,c,d) with a o b = c o d, exact."""
    mode = Mode.parse(mode)
    _check_overflow(ground, mode)
    xs = ground.elements
    if not xs:
        return 0
    if len(xs) >= _NUMPY_MIN and mode is Mode.ADDITIVE:
        lo, hi = 2 * xs[0], 2 * xs[-1]
        arr = np.asarray(xs, dtype=np.int64)
        counts = np.zeros(hi - lo + 1, dtype=np.int64)
        rows = max(1, _CHUNK_ELEMS // len(arr))
        for i in range(0, len(arr), rows):
            block = (arr[i : i + rows, None] + arr[None, :]).ravel()
            counts += np.bincount(block - lo, minlength=hi - lo + 1)
        return int(np.dot(counts, counts))
    hist: Counter = Counter()
    for i, a in enumerate(xs):
        hist[mode.combine(a, a)] += 1
        for b in xs[i + 1 :]:
            hist[mode.combine(a, b)] += 2
    return sum(r * r for r in hist.values())


def nontrivial_energy(ground: GroundSet, mode: Mode) -> int:
    """Energy above the forced floor of 2|A|^2 - |A| trivial quadruples."""
    return energy(ground, mode) - trivial_quadruple_count(len(ground))


@dataclass(frozen=True)
class EnergyReport:
    set_size: int
    energy_add: int
    energy_mul: int
    nontrivial_add: int
    nontrivial_mul: int
    sumset_size: int
    productset_size: int
    cs_lower_add: Fraction
    cs_lower_mul: Fraction

    def as_dict(self) -> dict:
        return {
            "set_size": self.set_size,
            "energy_add": self.energy_add,
            "energy_mul": self.energy_mul,
            "nontrivial_add": self.nontrivial_add,
            "nontrivial_mul": self.nontrivial_mul,
            "sumset_size": self.sumset_size,
            "productset_size": self.productset_size,
            "cs_lower_add": self.cs_lower_add,
            "cs_lower_mul": self.cs_lower_mul,
        }


def energy_report(ground: GroundSet) -> EnergyReport:
    """Both energies, both combined-set sizes, and the Cauchy-Schwarz floors
    |A|^4 / |A+A| and |A|^4 / |AA| (energy always sits above them)."""
    if not ground.elements:
        raise ValueError("energy report needs a nonempty set")
    m = len(ground)
    e_add = energy(ground, Mode.ADDITIVE)
    e_mul = energy(ground, Mode.MULTIPLICATIVE)
    s_size = combined_set_size(ground, Mode.ADDITIVE)
    p_size = combined_set_size(ground, Mode.MULTIPLICATIVE)
    return EnergyReport(
        set_size=m,
        energy_add=e_add,
        energy_mul=e_mul,
        nontrivial_add=e_add - trivial_quadruple_count(m),
        nontrivial_mul=e_mul - trivial_quadruple_count(m),
        sumset_size=s_size,
        productset_size=p_size,
        cs_lower_add=Fraction(m**4, s_size),
        cs_lower_mul=Fraction(m**4, p_size),
    )


# --- expected additive energy of a uniform fixed-size random subset of [n]


def solution_pattern_counts(n: int, method: str = "auto") -> dict[int, int]:
    """Ordered solutions of a+b=c+d in [n]^4, bucketed by the number k of
    distinct values among {a,b,c,d}.

    Two independent routes: direct enumeration (used below n=100) and the
    closed forms

        k=1: n                      (a,a,a,a)
        k=2: 2n(n-1)                ({a,b} = {c,d}, a != b, 4 orderings)
        k=3: 4 * (#same-parity pairs)   (x+y = 2z, 4 orderings)
        k=4: (2n^3+n)/3 - the rest  (total energy of [n] minus the above)

    The two routes must agree wherever both apply.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if method == "auto":
        method = "bruteforce" if n <= 100 else "closed"
    if method == "bruteforce":
        counts = {1: 0, 2: 0, 3: 0, 4: 0}
        for a in range(1, n + 1):
            for b in range(1, n + 1):
                s = a + b
                for c in range(max(1, s - n), min(n, s - 1) + 1):
                    d = s - c
                    counts[len({a, b, c, d})] += 1
        return counts
    if method == "closed":
        half_up = (n + 1) // 2
        half_down = n // 2
        total = (2 * n**3 + n) // 3
        counts = {
            1: n,
            2: 2 * n * (n - 1),
            3: 4 * (comb(half_up, 2) + comb(half_down, 2)),
        }
        counts[4] = total - counts[1] - counts[2] - counts[3]
        return counts
    raise ValueError(f"unknown method {method!r}")


def expected_energy_exact(n: int, m: int) -> Fraction:
    """Exact expectation of the additive energy of a uniform m-subset of [n].

    Each ordered solution quadruple with k distinct values survives into the
    subset with probability (m)_k / (n)_k (falling factorials), so the
    expectation is sum_k N_k(n) * (m)_k / (n)_k, an exact rational.
    """
    if not 0 <= m <= n:
        raise ValueError(f"need 0 <= m <= n, got m={m}, n={n}")
    counts = solution_pattern_counts(n)
    total = Fraction(0)
    for k, count in counts.items():
        if k > m or count == 0:
            continue
        prob = Fraction(1)
        for i in range(k):
            prob *= Fraction(m - i, n - i)
        total += count * prob
    return total


def expected_nontrivial_energy_exact(n: int, m: int) -> Fraction:
    """Expected energy minus the deterministic trivial count 2m^2 - m."""
    return expected_energy_exact(n, m) - trivial_quadruple_count(m)
