"""Interchange-free Quicksort with exact counters, seeded variate
generators, parameter sweeps and polynomial complexity fits."""
from .core_sort import (
    SortOutcome,
    SortStats,
    make_keys,
    new_sort,
    partition_segment,
    quicksort_baseline,
    verify_sorted_permutation,
)
from .fixtures import PAPER_TABLES, fixture_consistency_report, paper_fixture
from .harness import (
    SweepConfig,
    SweepTable,
    TrialRecord,
    derive_trial_seed,
    run_sweep,
    run_trial,
    summarize,
)
from .regression import (
    Dependent,
    Flat,
    PolyFit,
    dependence_verdict,
    polyfit,
    predict,
    select_degree,
)
from .rng import DistributionSpec, SplitMix64, draw_key, generate_keys, splitmix_next

__version__ = "0.1.0"
