"""Desk-scale sweeps: power-law fits, random-subset regimes, evidence tables.

Counting statistics of the constructions grow polynomially with log-factor
corrections, so sweeps are summarised by ordinary least squares on
(ln set_size, ln metric).  Fits are reported with slope standard error and
R^2; acceptance windows for slopes live with the callers, not here.
"""

from __future__ import annotations

import statistics
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt, log
from typing import Callable, Optional

from .energy import Mode, combined_set_size, energy
from .groundset import (
    GroundSet,
    SampleSpec,
    build_odd_power_set,
    build_interval,
    build_pq_set,
    build_triple_prime_set,
    sample_subset,
)
from .lowenergy import t_exact, t_random_search
from .productgraph import c4free_capacity
from .rng import derive_seed
from .sidon import deletion_sidon, greedy_sidon, max_sidon_subset, sumset_cardinality_bound

CONSTRUCTIONS: dict[str, Callable[[int], GroundSet]] = {
    "pq": build_pq_set,
    "triple": build_triple_prime_set,
    "oddpow": build_odd_power_set,
    "interval": build_interval,
}

EXACT_METRIC_CAP = 30     # exact Sidon statistics only below this set size
RANDOM_SUBSET_N_CAP = 120  # documented cap for certified random-subset runs
SOLVER_BUDGET = 10**7
AUDIT_T_EXACT_LIMIT = 16  # audit summaries keep the exhaustive t cheap

METRICS = (
    "sumset_size",
    "productset_size",
    "c4free_capacity",
    "sidon_upper_bound",
    "exact_s_plus",
    "exact_s_times",
    "energy_add",
    "energy_mul",
)


@dataclass(frozen=True)
class Row:
    param: int
    set_size: int
    metric: str
    value: int

    def as_dict(self) -> dict:
        return {"n": self.param, "set_size": self.set_size, "metric": self.metric, "value": self.value}


@dataclass(frozen=True)
class FitResult:
    slope: float
    intercept: float
    stderr: float
    r2: float
    points: int

    def as_dict(self) -> dict:
        return {
            "slope": self.slope,
            "intercept": self.intercept,
            "stderr": self.stderr,
            "r2": self.r2,
            "points": self.points,
        }


@dataclass(frozen=True)
class ScalingSeries:
    rows: tuple[Row, ...]
    fits: dict[str, FitResult]

    def metrics(self) -> list[str]:
        seen = []
        for row in self.rows:
            if row.metric not in seen:
                seen.append(row.metric)
        return seen

    def as_dict(self) -> dict:
        return {
            "rows": [r.as_dict() for r in self.rows],
            "fits": {m: f.as_dict() for m, f in self.fits.items()},
        }


def fit_exponent(rows: "tuple[Row, ...] | ScalingSeries", metric: Optional[str] = None) -> FitResult:
    """OLS slope of ln(value) against ln(set_size) for one metric's rows.

    Rows with value 0 or 1 are dropped (ln-degenerate points); negative
    values are an error; at least 3 surviving rows are required.
    """
    if isinstance(rows, ScalingSeries):
        rows = rows.rows
    picked = [r for r in rows if metric is None or r.metric == metric]
    if any(r.value < 0 for r in picked):
        raise ValueError("metric values must be nonnegative for a log-log fit")
    picked = [r for r in picked if r.value not in (0, 1)]
    if len(picked) < 3:
        raise ValueError("a fit needs at least 3 usable rows")
    if any(r.set_size <= 0 for r in picked):
        raise ValueError("set sizes must be positive")
    xs = [log(r.set_size) for r in picked]
    ys = [log(r.value) for r in picked]
    k = len(xs)
    mx = sum(xs) / k
    my = sum(ys) / k
    sxx = sum((x - mx) ** 2 for x in xs)
    if sxx == 0:
        raise ValueError("all set sizes identical; slope undefined")
    sxy = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    slope = sxy / sxx
    intercept = my - slope * mx
    ss_res = sum((y - (intercept + slope * x)) ** 2 for x, y in zip(xs, ys))
    ss_tot = sum((y - my) ** 2 for y in ys)
    stderr = (ss_res / (k - 2) / sxx) ** 0.5 if k > 2 else 0.0
    r2 = 1.0 if ss_tot == 0 else 1.0 - ss_res / ss_tot
    return FitResult(slope=slope, intercept=intercept, stderr=stderr, r2=r2, points=k)


def _pq_class_sizes(ground: GroundSet) -> tuple[int, int]:
    if ground.labels is None or any(len(lab) != 2 for lab in ground.labels):
        raise ValueError("metric needs the two-prime labels of the pq construction")
    return len({lab[0] for lab in ground.labels}), len({lab[1] for lab in ground.labels})


def _metric_value(metric: str, ground: GroundSet, cache: dict) -> int:
    if metric == "sumset_size":
        if "sumset_size" not in cache:
            cache["sumset_size"] = combined_set_size(ground, Mode.ADDITIVE)
        return cache["sumset_size"]
    if metric == "productset_size":
        return combined_set_size(ground, Mode.MULTIPLICATIVE)
    if metric == "c4free_capacity":
        size_p, size_q = _pq_class_sizes(ground)
        return c4free_capacity(size_p, size_q)
    if metric == "sidon_upper_bound":
        return sumset_cardinality_bound_from_size(_metric_value("sumset_size", ground, cache))
    if metric in ("exact_s_plus", "exact_s_times"):
        if len(ground) > EXACT_METRIC_CAP:
            raise ValueError(f"{metric} is capped at |A| = {EXACT_METRIC_CAP}, got {len(ground)}")
        mode = Mode.ADDITIVE if metric == "exact_s_plus" else Mode.MULTIPLICATIVE
        res = max_sidon_subset(ground, mode, node_budget=SOLVER_BUDGET)
        if not res.optimal:
            raise RuntimeError(f"{metric} failed to certify within budget")
        return res.size
    if metric == "energy_add":
        return energy(ground, Mode.ADDITIVE)
    if metric == "energy_mul":
        return energy(ground, Mode.MULTIPLICATIVE)
    raise ValueError(f"unknown metric {metric!r}; choose from {METRICS}")


def sumset_cardinality_bound_from_size(size: int) -> int:
    return (isqrt(8 * size + 1) - 1) // 2


def run_scaling(construction: str, params: list[int], metrics: list[str]) -> ScalingSeries:
    """Evaluate each metric per construction parameter and fit the slopes.

    Deterministic: no randomness anywhere, so identical calls produce
    identical series.
    """
    if construction not in CONSTRUCTIONS:
        raise ValueError(f"unknown construction {construction!r}; choose from {sorted(CONSTRUCTIONS)}")
    if len(params) < 3:
        raise ValueError("a sweep needs at least 3 parameters (fits require 3 rows)")
    for metric in metrics:
        if metric not in METRICS:
            raise ValueError(f"unknown metric {metric!r}; choose from {METRICS}")
    build = CONSTRUCTIONS[construction]
    rows: list[Row] = []
    for param in sorted(params):
        ground = build(param)
        cache: dict = {}
        for metric in metrics:
            rows.append(Row(param=param, set_size=len(ground), metric=metric,
                            value=_metric_value(metric, ground, cache)))
    series_rows = tuple(rows)
    fits = {m: fit_exponent(series_rows, m) for m in metrics}
    return ScalingSeries(rows=series_rows, fits=fits)


def random_subset_experiment(n: int, a: float, trials: int, seed: int, node_budget: int = SOLVER_BUDGET) -> dict:
    """Exact largest-Sidon-subset statistics of uniform random m-subsets of
    [n] with m = round(n^a).

    Every trial is certified by the exact solver, so n is capped (and the
    practical cost grows steeply once m passes ~25; the interesting sparse
    regimes stay cheap).  Reported ratios s/n^(1/3) and s/m^(1/2) are the
    two candidate growth laws; with a = 1 the subset is always [n] itself
    and the statistics have zero variance.
    """
    if not 1 / 3 <= a <= 1:
        raise ValueError("exponent a must lie in [1/3, 1]")
    if n < 2 or n > RANDOM_SUBSET_N_CAP:
        raise ValueError(f"n must lie in [2, {RANDOM_SUBSET_N_CAP}] for certified runs")
    if trials < 1:
        raise ValueError("need at least one trial")
    m = round(n**a)
    if m < 1 or m > n:
        raise ValueError(f"subset size m = {m} leaves [0, n]")
    ground = build_interval(n)
    sizes = []
    for t in range(trials):
        sub = sample_subset(ground, SampleSpec(kind="fixed-size", m=m, seed=derive_seed(seed, t)))
        res = max_sidon_subset(sub, Mode.ADDITIVE, node_budget=node_budget)
        if not res.optimal:
            raise RuntimeError("exact solver exhausted its budget; raise node_budget or shrink n")
        sizes.append(res.size)
    mean = statistics.fmean(sizes)
    return {
        "n": n,
        "a": a,
        "m": m,
        "trials": trials,
        "s_plus_mean": mean,
        "s_plus_median": statistics.median(sizes),
        "s_plus_min": min(sizes),
        "s_plus_max": max(sizes),
        "ratio_n_third": mean / n ** (1 / 3),
        "ratio_m_half": mean / m**0.5,
        "sizes": sizes,
    }


def conjecture_audit(
    ground: GroundSet,
    node_budget: int = 10**6,
    seed: int = 0,
    deletion_runs: int = 31,
    search_trials: int = 40,
    solver_cap: int = 400,
    productset_cap: int = 3000,
) -> dict:
    """Evidence table for one set: Sidon statistics from every angle.

    Emits exact values where the solver certifies within budget, greedy and
    deletion lower bounds, pair-value upper bounds, the bipartite capacity
    bound when two-prime labels are present, the doubling ratio
    K = |A+A| / |A|, and the small-sumset reference curve
    |A|^(2/3) / (K^(2/3) (ln |A|)^(1/3)).  Nothing beyond solver
    certificates is asserted; uncertified entries are flagged.
    """
    if not ground.elements:
        raise ValueError("need a nonempty set")
    n = len(ground)
    sumset = combined_set_size(ground, Mode.ADDITIVE)
    productset = combined_set_size(ground, Mode.MULTIPLICATIVE) if n <= productset_cap else None
    doubling = Fraction(sumset, n)

    def per_mode(mode: Mode) -> dict:
        entry: dict = {"mode": mode.value}
        entry["greedy_lower"] = len(greedy_sidon(ground, mode))
        runs = [len(deletion_sidon(ground, mode, derive_seed(seed, 1000 + r))) for r in range(deletion_runs)]
        entry["deletion_median"] = statistics.median(runs)
        entry["upper_pair_values"] = (
            sumset_cardinality_bound(ground, mode)
            if (mode is Mode.ADDITIVE or productset is not None)
            else None
        )
        if mode is Mode.MULTIPLICATIVE and ground.labels is not None and all(len(l) == 2 for l in ground.labels):
            size_p, size_q = _pq_class_sizes(ground)
            entry["upper_capacity"] = c4free_capacity(size_p, size_q)
        if n <= solver_cap:
            res = max_sidon_subset(ground, mode, node_budget=node_budget)
            entry["solver_size"] = res.size
            entry["certified"] = res.optimal
            entry["nodes_explored"] = res.nodes_explored
        else:
            entry["solver_size"] = None
            entry["certified"] = False
        stream = 2000 if mode is Mode.ADDITIVE else 2001
        search = t_random_search(ground, mode, trials=search_trials, seed=derive_seed(seed, stream))
        entry["t_search_lower"] = search.size
        if n <= AUDIT_T_EXACT_LIMIT:
            entry["t_exact"] = t_exact(ground, mode).size
        return entry

    s_plus = per_mode(Mode.ADDITIVE)
    s_times = per_mode(Mode.MULTIPLICATIVE)

    def best_lower(entry: dict) -> int:
        # the solver's best-found subset is a genuine Sidon set even when
        # the search was not exhausted, so it always counts as a lower bound
        cands = [entry["greedy_lower"], entry["deletion_median"], entry["solver_size"]]
        return max(int(c) for c in cands if c is not None)

    ln_n = log(n) if n > 1 else 1.0
    reference = n ** (2 / 3) / (float(doubling) ** (2 / 3) * ln_n ** (1 / 3)) if n > 1 else 1.0
    return {
        "set_size": n,
        "provenance": ground.provenance,
        "sumset_size": sumset,
        "productset_size": productset,
        "doubling_K": doubling,
        "s_plus": s_plus,
        "s_times": s_times,
        "max_best_lower": max(best_lower(s_plus), best_lower(s_times)),
        "small_sumset_reference": reference,
    }
