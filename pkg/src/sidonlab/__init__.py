"""sidonlab: exact Sidon statistics, energies, and product-graph experiments."""

from .energy import (
    EnergyReport,
    Mode,
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
from .groundset import (
    ConstructionError,
    GroundSet,
    SampleSpec,
    build_odd_power_set,
    build_interval,
    build_pq_set,
    build_triple_prime_set,
    format_lines,
    parse_lines,
    sample_subset,
)
from .lowenergy import LowEnergyResult, odd_power_audit, low_energy_check, t_exact, t_random_search
from .primes import PrimePool, primes_in_interval, primes_up_to
from .productgraph import (
    C4Witness,
    ProductGraph,
    c4free_capacity,
    cs_chain_audit,
    find_c4,
    format_graph,
    graph_from_pq,
    parse_graph,
)
from .rng import Xorshift64Star, derive_seed
from .scaling import (
    FitResult,
    Row,
    ScalingSeries,
    conjecture_audit,
    fit_exponent,
    random_subset_experiment,
    run_scaling,
)
from .sidon import (
    MaxSubsetResult,
    SidonWitness,
    deletion_sidon,
    greedy_sidon,
    max_sidon_subset,
    sidon_check,
    sumset_cardinality_bound,
    violation_count,
)

__version__ = "0.1.0"
