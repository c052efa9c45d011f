"""Sidon verdicts, maximum Sidon subsets, and probabilistic extraction.

A set is Sidon for an operation o when all values a o b over unordered
pairs (repetition allowed) are distinct; equivalently a o b = c o d forces
{a,b} = {c,d} as multisets.  Under that convention 1+3 = 2+2 already
violates additively, so triples x + y = 2z count as conflicts alongside
honest quadruples.

The exact solver is a branch-and-bound over include/exclude decisions.
Conflicts are never materialised as a hypergraph (it has Theta(|A|^3)
edges); feasibility of including an element is an O(kept) collision lookup
against the running table of pair values.  Pruning combines the incumbent
with a per-suffix cap: any t further Sidon elements need t(t+1)/2 distinct
pair values inside the suffix's combined set.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import comb, isqrt
from typing import Optional

from .energy import Mode, combined_set_size
from .groundset import GroundSet, SampleSpec, sample_subset


@dataclass(frozen=True)
class SidonWitness:
    """Violating quadruple: a o b = c o d with {a,b} != {c,d}."""

    a: int
    b: int
    c: int
    d: int

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)


@dataclass(frozen=True)
class MaxSubsetResult:
    subset: GroundSet
    size: int
    optimal: bool
    nodes_explored: int
    budget_exhausted: bool

    def as_dict(self) -> dict:
        return {
            "size": self.size,
            "optimal": self.optimal,
            "nodes_explored": self.nodes_explored,
            "subset": list(self.subset.elements),
        }


def sidon_check(ground: GroundSet, mode: Mode) -> Optional[SidonWitness]:
    """None when Sidon; otherwise the first witness in pair-lexicographic
    scan order (so the returned quadruple is deterministic)."""
    mode = Mode.parse(mode)
    xs = ground.elements
    first_pair: dict[int, tuple[int, int]] = {}
    for i, a in enumerate(xs):
        for b in xs[i:]:
            v = mode.combine(a, b)
            seen = first_pair.get(v)
            if seen is not None:
                return SidonWitness(seen[0], seen[1], a, b)
            first_pair[v] = (a, b)
    return None


def _pair_values(elems, mode: Mode, x: int) -> list[int]:
    # x o y over distinct y plus the self pair; internally distinct because
    # x o y1 = x o y2 forces y1 = y2 (and x o x = x o y forces y = x)
    vals = [mode.combine(x, y) for y in elems]
    vals.append(mode.combine(x, x))
    return vals


def greedy_sidon(ground: GroundSet, mode: Mode) -> GroundSet:
    """Ascending scan keeping each element that stays conflict-free."""
    mode = Mode.parse(mode)
    kept: list[int] = []
    used: set[int] = set()
    for x in ground.elements:
        vals = _pair_values(kept, mode, x)
        if used.isdisjoint(vals):
            kept.append(x)
            used.update(vals)
    return ground.subset(kept, provenance=f"greedy-{mode.value}-sidon of {ground.provenance}")


def sumset_cardinality_bound(ground: GroundSet, mode: Mode) -> int:
    """Largest m with m(m+1)/2 <= |A o A|; upper-bounds the Sidon subset
    size because m Sidon elements produce m(m+1)/2 distinct pair values."""
    size = combined_set_size(ground, Mode.parse(mode))
    return (isqrt(8 * size + 1) - 1) // 2


def _conflict_order(xs: tuple[int, ...], mode: Mode) -> list[int]:
    """Branch order: decreasing conflict degree, then ascending value.

    The degree of x is the number of other unordered pairs sharing a value
    with some pair containing x, read off the pair-value histogram."""
    hist: Counter = Counter()
    for i, a in enumerate(xs):
        for b in xs[i:]:
            hist[mode.combine(a, b)] += 1
    deg = {x: 0 for x in xs}
    for i, a in enumerate(xs):
        for b in xs[i:]:
            extra = hist[mode.combine(a, b)] - 1
            if extra:
                deg[a] += extra
                if b != a:
                    deg[b] += extra
    return sorted(xs, key=lambda x: (-deg[x], x))


def _suffix_caps(order: list[int], mode: Mode) -> list[int]:
    """caps[d] bounds how many Sidon elements fit inside order[d:]."""
    caps = [0] * (len(order) + 1)
    vals: set[int] = set()
    for d in range(len(order) - 1, -1, -1):
        x = order[d]
        vals.add(mode.combine(x, x))
        for y in order[d + 1 :]:
            vals.add(mode.combine(x, y))
        tri = (isqrt(8 * len(vals) + 1) - 1) // 2
        caps[d] = min(len(order) - d, tri)
    return caps


def max_sidon_subset(ground: GroundSet, mode: Mode, node_budget: int = 10**6) -> MaxSubsetResult:
    """Largest Sidon subset by branch and bound.

    Deterministic for a given (input, budget): fixed branch order, include
    branch first, incumbent replaced only on strict improvement.  On budget
    exhaustion the best subset found so far is returned with optimal=False.
    """
    mode = Mode.parse(mode)
    if not ground.elements:
        raise ValueError("need a nonempty set")
    if node_budget < 1:
        raise ValueError("node budget must be >= 1")

    order = _conflict_order(ground.elements, mode)
    caps = _suffix_caps(order, mode)

    incumbent = list(greedy_sidon(ground, mode).elements)
    best_size = len(incumbent)
    best = incumbent

    kept: list[int] = []
    kept_vals: set[int] = set()
    nodes = 0
    aborted = False

    def walk(d: int) -> None:
        nonlocal nodes, aborted, best, best_size
        nodes += 1
        if nodes >= node_budget:
            aborted = True
            return
        if d == len(order) or aborted:
            return
        if len(kept) + caps[d] <= best_size:
            return
        x = order[d]
        vals = _pair_values(kept, mode, x)
        if kept_vals.isdisjoint(vals):
            kept.append(x)
            kept_vals.update(vals)
            if len(kept) > best_size:
                best_size = len(kept)
                best = kept.copy()
            walk(d + 1)
            kept.pop()
            kept_vals.difference_update(vals)
            if aborted:
                return
        walk(d + 1)

    walk(0)
    subset = ground.subset(best, provenance=f"max-{mode.value}-sidon of {ground.provenance}")
    return MaxSubsetResult(
        subset=subset,
        size=best_size,
        optimal=not aborted,
        nodes_explored=nodes,
        budget_exhausted=aborted,
    )


def violation_count(ground: GroundSet, mode: Mode) -> int:
    """Number of unordered nontrivial solutions: pairs of distinct unordered
    element pairs sharing one value, i.e. sum_s C(u(s), 2) over the unordered
    pair histogram u.

    Orbit accounting against the ordered count: a solution whose two pairs
    both have distinct entries expands to 8 ordered quadruples (swap within
    each pair, swap the sides); a solution with one repeated-entry pair
    (x o y = z o z) expands to 4.  Summing C(u(s), 2) counts each orbit once
    without needing that case split.
    """
    mode = Mode.parse(mode)
    xs = ground.elements
    u: Counter = Counter()
    for i, a in enumerate(xs):
        for b in xs[i:]:
            u[mode.combine(a, b)] += 1
    return sum(comb(c, 2) for c in u.values() if c > 1)


def deletion_sidon(ground: GroundSet, mode: Mode, seed: int) -> GroundSet:
    """Probabilistic extraction of a Sidon subset.

    Steps: count unordered violations V; sample a p-random subset with
    p = min(1, (|A| / 2V)^(1/3)) (p = 1 when V = 0); then repeatedly locate
    a surviving violation and delete its largest participating element.
    The result is re-verified Sidon before returning.
    """
    mode = Mode.parse(mode)
    if not ground.elements:
        raise ValueError("need a nonempty set")
    v = violation_count(ground, mode)
    p = 1.0 if v == 0 else min(1.0, (len(ground) / (2 * v)) ** (1.0 / 3.0))
    sampled = sample_subset(ground, SampleSpec(kind="independent", seed=seed, p=p))
    elems = list(sampled.elements)
    while True:
        witness = sidon_check(GroundSet(elements=tuple(elems)), mode)
        if witness is None:
            break
        elems.remove(max(witness.as_tuple()))
    out = ground.subset(elems, provenance=f"deletion-{mode.value}(p={p:.12g},seed={seed}) of {ground.provenance}")
    if sidon_check(out, mode) is not None:
        raise RuntimeError("deletion left a violation behind; this is a bug")
    return out
