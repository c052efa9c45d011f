import random
from fractions import Fraction

import pytest

from sidonlab import (
    GroundSet,
    Mode,
    build_odd_power_set,
    build_interval,
    build_pq_set,
    combined_set,
    combined_set_size,
    energy,
    energy_report,
    expected_energy_exact,
    expected_nontrivial_energy_exact,
    nontrivial_energy,
    solution_pattern_counts,
    trivial_quadruple_count,
)

from _oracles import add, brute_energy, histogram_energy, mul


def test_combined_set_examples():
    s = combined_set(GroundSet((1, 2, 3)), Mode.ADDITIVE)
    assert s.elements == (2, 3, 4, 5, 6)
    p = combined_set(GroundSet((2, 3, 5)), Mode.MULTIPLICATIVE)
    assert p.elements == (4, 6, 9, 10, 15, 25)


def test_odd_power_productset_bound():
    oddpow2 = build_odd_power_set(2)
    size = combined_set_size(oddpow2, Mode.MULTIPLICATIVE)
    oracle = len({a * b for a in oddpow2.elements for b in oddpow2.elements})
    assert size == oracle
    assert size <= 4 * 2**5


def test_energy_examples():
    assert energy(GroundSet((9,)), Mode.ADDITIVE) == 1
    assert energy(GroundSet((9,)), Mode.MULTIPLICATIVE) == 1
    assert energy(GroundSet((1, 2, 3)), Mode.ADDITIVE) == 19
    assert energy(GroundSet((10, 14, 15, 21)), Mode.MULTIPLICATIVE) == 36


def test_nontrivial_examples():
    assert nontrivial_energy(GroundSet((1, 2, 5, 7)), Mode.ADDITIVE) == 0
    assert nontrivial_energy(GroundSet((1, 2, 3)), Mode.ADDITIVE) == 4
    assert nontrivial_energy(GroundSet((10, 14, 15, 21)), Mode.MULTIPLICATIVE) == 8


def test_energy_matches_quadruple_enumeration():
    rng = random.Random(4)
    for _ in range(40):
        m = rng.randint(1, 8)
        xs = tuple(sorted(rng.sample(range(1, 60), m)))
        g = GroundSet(xs)
        assert energy(g, Mode.ADDITIVE) == brute_energy(xs, add)
        assert energy(g, Mode.MULTIPLICATIVE) == brute_energy(xs, mul)


def test_energy_matches_histogram_oracle_larger():
    rng = random.Random(5)
    for _ in range(25):
        m = rng.randint(9, 12)
        xs = tuple(sorted(rng.sample(range(1, 500), m)))
        g = GroundSet(xs)
        assert energy(g, Mode.ADDITIVE) == histogram_energy(xs, add)
        assert energy(g, Mode.MULTIPLICATIVE) == histogram_energy(xs, mul)


def test_energy_exhaustive_battery():
    # every subset of a fixed 10-element set, both modes, vs the oracle
    base = (1, 2, 3, 4, 6, 8, 9, 12, 16, 24)
    for mask in range(1, 1 << 10):
        xs = tuple(x for i, x in enumerate(base) if mask >> i & 1)
        g = GroundSet(xs)
        assert energy(g, Mode.ADDITIVE) == histogram_energy(xs, add)
        assert energy(g, Mode.MULTIPLICATIVE) == histogram_energy(xs, mul)


def test_energy_translation_and_scaling_invariance():
    rng = random.Random(6)
    for _ in range(20):
        xs = sorted(rng.sample(range(1, 400), rng.randint(2, 15)))
        g = GroundSet(tuple(xs))
        shifted = GroundSet(tuple(x + 57 for x in xs))
        scaled = GroundSet(tuple(3 * x for x in xs))
        assert energy(g, Mode.ADDITIVE) == energy(shifted, Mode.ADDITIVE)
        assert energy(g, Mode.MULTIPLICATIVE) == energy(scaled, Mode.MULTIPLICATIVE)


def test_energy_floor_and_report_invariants():
    for ground in (build_interval(12), build_pq_set(6), build_odd_power_set(2), GroundSet((4, 9, 25))):
        rep = energy_report(ground)
        m = rep.set_size
        assert rep.energy_add >= m * m and rep.energy_mul >= m * m
        assert rep.nontrivial_add == rep.energy_add - trivial_quadruple_count(m)
        assert rep.nontrivial_mul == rep.energy_mul - trivial_quadruple_count(m)
        assert rep.energy_add >= rep.cs_lower_add
        assert rep.energy_mul >= rep.cs_lower_mul


def test_report_examples():
    rep = energy_report(GroundSet((1, 2)))
    assert rep.energy_add == 6
    assert rep.sumset_size == 3
    assert rep.cs_lower_add == Fraction(16, 3)
    single = energy_report(GroundSet((1,)))
    assert single.energy_add == single.energy_mul == 1
    assert single.nontrivial_add == single.nontrivial_mul == 0
    primes = energy_report(GroundSet((2, 3, 5)))
    assert primes.energy_mul == 15 == trivial_quadruple_count(3)
    assert primes.nontrivial_mul == 0


def test_interval_energy_closed_form():
    for n in range(1, 51):
        assert energy(build_interval(n), Mode.ADDITIVE) == (2 * n**3 + n) // 3


def test_overflow_detection():
    big = GroundSet((2**62,))
    with pytest.raises(OverflowError):
        energy(big, Mode.MULTIPLICATIVE)
    with pytest.raises(OverflowError):
        combined_set(big, Mode.ADDITIVE)


def test_pattern_count_routes_agree():
    for n in (1, 2, 3, 7, 12, 25, 40, 77, 100):
        assert solution_pattern_counts(n, "bruteforce") == solution_pattern_counts(n, "closed")


def test_pattern_counts_sum_to_interval_energy():
    for n in (3, 9, 16):
        counts = solution_pattern_counts(n)
        assert sum(counts.values()) == (2 * n**3 + n) // 3


def test_expected_energy_edges():
    assert expected_energy_exact(17, 0) == 0
    for n in range(1, 13):
        assert expected_energy_exact(n, n) == (2 * n**3 + n) // 3
    with pytest.raises(ValueError):
        expected_energy_exact(5, 6)


def test_expected_energy_is_exact_average_small():
    # average energy over all C(6, 3) subsets of [6], enumerated directly
    from itertools import combinations

    n, m = 6, 3
    total = 0
    count = 0
    for sub in combinations(range(1, n + 1), m):
        total += histogram_energy(sub, add)
        count += 1
    assert expected_energy_exact(n, m) == Fraction(total, count)


def test_expected_nontrivial_growth_exponent():
    # nontrivial expectation follows the m^4/n law in the mid-range
    from sidonlab.scaling import Row, fit_exponent

    n = 10**4
    ms = [22, 32, 47, 68, 100, 147, 215, 316, 464]
    rows = tuple(
        Row(param=m, set_size=m, metric="e0", value=int(expected_nontrivial_energy_exact(n, m)))
        for m in ms
    )
    fit = fit_exponent(rows, "e0")
    assert 3.6 <= fit.slope <= 4.2
