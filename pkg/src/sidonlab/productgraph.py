"""Bipartite view of prime-product sets: 4-cycles and capacity bounds.

Elements p*q of a prime-product ground set are edges of a bipartite graph
on the two prime classes, the edge between p and q carrying the label p*q.
A subset of edges is multiplicatively Sidon exactly when it spans no
4-cycle: a cycle p, q, p', q' gives (pq)(p'q') = (p'q)(pq'), and by unique
factorization that is the only way two distinct edge pairs can share a
product.

The capacity bound is the integer form of the Cauchy-Schwarz chain for
C4-free bipartite graphs: |E|^2 <= |Q| (|E| + |P|^2), so |E| is at most the
positive root of that quadratic.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt
from typing import Optional

from .groundset import GroundSet


@dataclass(frozen=True)
class ProductGraph:
    left: tuple[int, ...]
    right: tuple[int, ...]
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        left_set, right_set = set(self.left), set(self.right)
        if left_set & right_set:
            raise ValueError("left and right vertex classes must be disjoint")
        for p, q in self.edges:
            if p not in left_set or q not in right_set:
                raise ValueError(f"edge ({p},{q}) leaves the vertex classes")

    @property
    def edge_count(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class C4Witness:
    """Four edges (p,q), (p,q2), (p2,q), (p2,q2) all present."""

    p: int
    p2: int
    q: int
    q2: int

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.p, self.p2, self.q, self.q2)


@dataclass(frozen=True)
class AuditCheck:
    check: str
    lhs: object
    rhs: object
    passed: Optional[bool]
    skipped: bool = False

    def as_dict(self) -> dict:
        out = {"check": self.check, "lhs": self.lhs, "rhs": self.rhs, "pass": self.passed}
        if self.skipped:
            out["skipped"] = True
        return out


def _is_prime(k: int) -> bool:
    if k < 2:
        return False
    d = 2
    while d * d <= k:
        if k % d == 0:
            return False
        d += 1
    return True


def graph_from_pq(ground: GroundSet, subset: Optional[list[int]] = None) -> ProductGraph:
    """Edges from the (p, q) labels of a prime-product set, optionally
    restricted to the given subset of elements."""
    if ground.labels is None:
        raise ValueError("ground set carries no labels; build it with build_pq_set")
    chosen = set(subset) if subset is not None else None
    if chosen is not None:
        missing = chosen - set(ground.elements)
        if missing:
            raise ValueError(f"subset values not in the ground set: {sorted(missing)[:5]}")
    left = set()
    right = set()
    edges = set()
    for x, lab in zip(ground.elements, ground.labels):
        if len(lab) != 2 or not _is_prime(lab[0]) or not _is_prime(lab[1]):
            raise ValueError(f"element {x} lacks a two-prime label (got {lab})")
        # vertex classes always cover the whole construction, so capacity
        # comparisons refer to the same graph whatever the edge subset
        left.add(lab[0])
        right.add(lab[1])
        if chosen is None or x in chosen:
            edges.add((lab[0], lab[1]))
    return ProductGraph(left=tuple(sorted(left)), right=tuple(sorted(right)), edges=frozenset(edges))


def find_c4(graph: ProductGraph) -> Optional[C4Witness]:
    """First 4-cycle in lexicographic (p, p2, q, q2) order, or None.

    Existence is decided by the codegree scan: walk left vertices in
    ascending order and mark right pairs; a pair seen twice means a C4.
    Only when one exists is the lexicographically first witness rebuilt.
    """
    adj: dict[int, list[int]] = {p: [] for p in graph.left}
    for p, q in graph.edges:
        adj[p].append(q)
    for p in graph.left:
        adj[p].sort()
    seen_pairs: set[tuple[int, int]] = set()
    found = False
    for p in graph.left:
        nbrs = adj[p]
        for i, q in enumerate(nbrs):
            for q2 in nbrs[i + 1 :]:
                if (q, q2) in seen_pairs:
                    found = True
                    break
                seen_pairs.add((q, q2))
            if found:
                break
        if found:
            break
    if not found:
        return None
    neigh = {p: set(adj[p]) for p in graph.left}
    for i, p in enumerate(graph.left):
        for p2 in graph.left[i + 1 :]:
            common = sorted(neigh[p] & neigh[p2])
            if len(common) >= 2:
                return C4Witness(p=p, p2=p2, q=common[0], q2=common[1])
    raise RuntimeError("codegree scan and pair scan disagree; this is a bug")


def c4free_capacity(size_p: int, size_q: int) -> int:
    """Largest integer e with e^2 <= size_q * (e + size_p^2)."""
    if size_p < 1 or size_q < 1:
        raise ValueError("vertex class sizes must be >= 1")
    disc = size_q * size_q + 4 * size_q * size_p * size_p
    e = (size_q + isqrt(disc)) // 2
    while (e + 1) * (e + 1) <= size_q * (e + 1 + size_p * size_p):
        e += 1
    while e * e > size_q * (e + size_p * size_p):
        e -= 1
    return e


def cs_chain_audit(graph: ProductGraph) -> list[AuditCheck]:
    """Numeric evaluation of the Cauchy-Schwarz chain on a concrete graph.

    (i)   |E|^2 <= |Q| * sum_q deg(q)^2
    (ii)  sum_q deg(q)^2 = |E| + sum over ordered pairs p != p2 of codeg
    (iii) C4-free graphs have codegree sum <= |P|^2 (skipped otherwise)
    """
    deg_q = {q: 0 for q in graph.right}
    for _, q in graph.edges:
        deg_q[q] += 1
    e = graph.edge_count
    sum_deg_sq = sum(d * d for d in deg_q.values())
    codeg_sum = sum(d * (d - 1) for d in deg_q.values())
    checks = [
        AuditCheck("cauchy_schwarz", e * e, len(graph.right) * sum_deg_sq,
                   e * e <= len(graph.right) * sum_deg_sq),
        AuditCheck("codegree_identity", sum_deg_sq, e + codeg_sum,
                   sum_deg_sq == e + codeg_sum),
    ]
    p_sq = len(graph.left) ** 2
    if find_c4(graph) is None:
        checks.append(AuditCheck("c4free_codegree_bound", codeg_sum, p_sq, codeg_sum <= p_sq))
    else:
        checks.append(AuditCheck("c4free_codegree_bound", codeg_sum, p_sq, None, skipped=True))
    return checks


def format_graph(graph: ProductGraph) -> str:
    lines = [
        "P: " + " ".join(str(p) for p in graph.left),
        "Q: " + " ".join(str(q) for q in graph.right),
    ]
    lines.extend(f"{p} {q}" for p, q in sorted(graph.edges))
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> ProductGraph:
    left: tuple[int, ...] = ()
    right: tuple[int, ...] = ()
    edges = set()
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("P:"):
            left = tuple(int(v) for v in line[2:].split())
        elif line.startswith("Q:"):
            right = tuple(int(v) for v in line[2:].split())
        else:
            p, q = line.split()
            edges.add((int(p), int(q)))
    return ProductGraph(left=left, right=right, edges=frozenset(edges))
