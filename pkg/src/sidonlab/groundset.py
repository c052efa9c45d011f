"""Integer ground sets: the constructions under study plus seeded sampling.

Every analysis in this package runs on a GroundSet: a strictly increasing
tuple of positive 64-bit integers, optionally carrying one factorization
label per element (the construction's certificate that the element count is
what unique factorization forces), plus a provenance string.

Constructions
-------------
* prime-product sets P*Q: products p*q with p prime <= n and q prime in the
  half-open interval (n, floor(n^2 / ln n)]
* triple-prime sets: all distinct products of three primes <= N
* odd-times-power sets: (2i-1) * 2^j for i in [N^2], j in [N], a union of N
  arithmetic progressions of length N^2
* initial intervals [N] = {1, ..., N}

All products are validated against the signed 64-bit range; constructions
fail loudly instead of wrapping.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from math import log
from typing import Iterable, Optional

from .primes import primes_in_interval, primes_up_to
from .rng import Xorshift64Star

INT64_MAX = (1 << 63) - 1


class ConstructionError(ValueError):
    """A construction's arithmetic preconditions fail (domain error)."""


@dataclass(frozen=True)
class GroundSet:
    elements: tuple[int, ...]
    labels: Optional[tuple[tuple[int, ...], ...]] = None
    provenance: str = ""

    def __post_init__(self):
        prev = 0
        for x in self.elements:
            if x < 1:
                raise ConstructionError("elements must be positive integers")
            if x <= prev:
                raise ConstructionError("elements must be strictly increasing")
            if x > INT64_MAX:
                raise OverflowError("element exceeds the signed 64-bit range")
            prev = x
        if self.labels is not None:
            if len(self.labels) != len(self.elements):
                raise ConstructionError("one label per element required")
            for x, lab in zip(self.elements, self.labels):
                prod = 1
                for f in lab:
                    prod *= f
                if prod != x:
                    raise ConstructionError(f"label factors of {x} do not multiply back")

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def label_of(self, x: int) -> tuple[int, ...]:
        if self.labels is None:
            raise ValueError("ground set carries no labels")
        i = bisect_left(self.elements, x)
        if i == len(self.elements) or self.elements[i] != x:
            raise KeyError(x)
        return self.labels[i]

    def subset(self, keep: Iterable[int], provenance: str = "") -> "GroundSet":
        """Sub-GroundSet of the given elements, labels carried along."""
        keep_set = set(keep)
        unknown = keep_set - set(self.elements)
        if unknown:
            raise ValueError(f"not elements of this ground set: {sorted(unknown)[:5]}")
        idx = [i for i, x in enumerate(self.elements) if x in keep_set]
        labels = tuple(self.labels[i] for i in idx) if self.labels is not None else None
        if not provenance:
            provenance = f"subset of {self.provenance}" if self.provenance else ""
        return GroundSet(
            elements=tuple(self.elements[i] for i in idx),
            labels=labels,
            provenance=provenance,
        )


@dataclass(frozen=True)
class SampleSpec:
    """How to draw a random subset: fixed size m, or independent inclusion p."""

    kind: str  # "fixed-size" or "independent"
    seed: int
    m: int = 0
    p: float = 0.0

    def __post_init__(self):
        if self.kind not in ("fixed-size", "independent"):
            raise ValueError(f"unknown sample kind {self.kind!r}")
        if self.kind == "independent" and not 0.0 <= self.p <= 1.0:
            raise ValueError("inclusion probability must lie in [0, 1]")
        if self.kind == "fixed-size" and self.m < 0:
            raise ValueError("subset size must be nonnegative")


def _check_product(a: int, b: int, what: str) -> int:
    v = a * b
    if v > INT64_MAX:
        raise OverflowError(f"{what}: product {a}*{b} exceeds the signed 64-bit range")
    return v


def build_pq_set(n: int) -> GroundSet:
    """Products p*q, p prime <= n < q prime <= floor(n^2 / ln n).

    The element count is exactly |P| * |Q| by unique factorization, and each
    element is labelled with its (p, q) pair.  Raises ConstructionError when
    the prime interval for q is empty.
    """
    if n < 2:
        raise ConstructionError("empty prime interval")
    q_hi = int(n * n / log(n))
    small = primes_up_to(n).primes
    large = primes_in_interval(n, q_hi)
    if not large:
        raise ConstructionError("empty prime interval")
    _check_product(small[-1], large[-1], "pq construction")
    pairs = sorted((p * q, (p, q)) for p in small for q in large)
    return GroundSet(
        elements=tuple(v for v, _ in pairs),
        labels=tuple(lab for _, lab in pairs),
        provenance=f"pq(n={n})",
    )


def build_triple_prime_set(limit: int) -> GroundSet:
    """All distinct products of three (not necessarily distinct) primes <= limit."""
    pool = primes_up_to(max(limit, 1)).primes
    if not pool:
        raise ConstructionError(f"no prime <= {limit}")
    items = []
    for i, p1 in enumerate(pool):
        for j in range(i, len(pool)):
            p2 = pool[j]
            for k in range(j, len(pool)):
                p3 = pool[k]
                v = _check_product(_check_product(p1, p2, "triple-prime"), p3, "triple-prime")
                items.append((v, (p1, p2, p3)))
    items.sort()
    return GroundSet(
        elements=tuple(v for v, _ in items),
        labels=tuple(lab for _, lab in items),
        provenance=f"triple(limit={limit})",
    )


def build_odd_power_set(n_progressions: int) -> GroundSet:
    """The set {(2i-1) * 2^j : i in [N^2], j in [N]} with N = n_progressions.

    A union of N arithmetic progressions of length N^2; the (odd part,
    power-of-two) split is injective, so the size is exactly N^3.  Labels
    store the pair (2i-1, 2^j), from which (i, j) is recoverable.
    """
    N = n_progressions
    if N < 1:
        raise ConstructionError("need at least one progression")
    _check_product(2 * N * N - 1, 1 << N, "odd-times-power construction")
    items = []
    for j in range(1, N + 1):
        pw = 1 << j
        for i in range(1, N * N + 1):
            items.append(((2 * i - 1) * pw, (2 * i - 1, pw)))
    items.sort()
    return GroundSet(
        elements=tuple(v for v, _ in items),
        labels=tuple(lab for _, lab in items),
        provenance=f"oddpow(N={N})",
    )


def build_interval(n: int) -> GroundSet:
    """The initial interval {1, ..., n}."""
    if n < 1:
        raise ConstructionError("interval needs n >= 1")
    return GroundSet(elements=tuple(range(1, n + 1)), provenance=f"interval(N={n})")


def sample_subset(ground: GroundSet, spec: SampleSpec) -> GroundSet:
    """Seeded random subset of ``ground``; identical (ground, spec) pairs
    reproduce the identical subset on any platform (see rng module)."""
    gen = Xorshift64Star(spec.seed)
    if spec.kind == "fixed-size":
        if spec.m > len(ground):
            raise ValueError(f"subset size {spec.m} exceeds ground size {len(ground)}")
        idx = gen.sample_indices(len(ground), spec.m)
    else:
        # one draw per element, in ascending element order
        idx = [i for i in range(len(ground.elements)) if gen.bernoulli(spec.p)]
    labels = tuple(ground.labels[i] for i in idx) if ground.labels is not None else None
    if spec.kind == "fixed-size":
        tag = f"sample(fixed-size,m={spec.m},seed={spec.seed})"
    else:
        tag = f"sample(independent,p={spec.p:.12g},seed={spec.seed})"
    return GroundSet(
        elements=tuple(ground.elements[i] for i in idx),
        labels=labels,
        provenance=f"{tag} of {ground.provenance}" if ground.provenance else tag,
    )


# --- line format: "element[<TAB>factor,factor,...]", header lines start with #


def format_lines(ground: GroundSet) -> str:
    lines = []
    if ground.provenance:
        lines.append(f"# {ground.provenance}")
    for i, x in enumerate(ground.elements):
        if ground.labels is not None:
            lines.append(f"{x}\t{','.join(str(f) for f in ground.labels[i])}")
        else:
            lines.append(str(x))
    return "\n".join(lines) + "\n"


def parse_lines(text: str) -> GroundSet:
    elements: list[int] = []
    labels: list[Optional[tuple[int, ...]]] = []
    provenance = ""
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            if not provenance:
                provenance = line.lstrip("#").strip()
            continue
        if "\t" in line:
            val, _, lab = line.partition("\t")
            elements.append(int(val))
            labels.append(tuple(int(f) for f in lab.split(",") if f))
        else:
            elements.append(int(line))
            labels.append(None)
    if elements != sorted(elements):
        order = sorted(range(len(elements)), key=lambda i: elements[i])
        elements = [elements[i] for i in order]
        labels = [labels[i] for i in order]
    all_labelled = bool(elements) and all(lab is not None for lab in labels)
    return GroundSet(
        elements=tuple(elements),
        labels=tuple(labels) if all_labelled else None,  # type: ignore[arg-type]
        provenance=provenance,
    )
