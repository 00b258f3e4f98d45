"""Acceptance gate.  Each test checks one numbered criterion at its stated
tolerance and logs a single PASS/FAIL line (INFO for the informational one).
The lines are repeated in the terminal summary under "acceptance criteria".
"""
import itertools
import math
import time
from fractions import Fraction

import numpy as np
import pytest
from scipy import stats

from newsort_lab.core_sort import new_sort
from newsort_lab.fixtures import paper_fixture
from newsort_lab.harness import SweepConfig, run_sweep, trial_csv
from newsort_lab.regression import Flat, dependence_verdict, polyfit, spearman_rho
from newsort_lab.reproduce import replica_config
from newsort_lab.rng import DistributionSpec, SplitMix64, generate_keys

from acceptance_log import record
from oracles import expected_random_comparisons, literal_new_sort

SEED = 0


def check(criterion, ok, detail):
    record(criterion, ok, detail)
    assert ok, detail


# --- A: fits over the published tables ---------------------------------------

@pytest.mark.parametrize("criterion,table_id,degree,published,tol", [
    ("1", 1, 4, 0.9953, 0.02),
    ("2", 2, 2, 0.9783, 0.02),
    ("3", 3, 4, 0.9065, 0.03),
    ("4", 4, 4, 0.9927, 0.02),
    ("5", 5, 3, 0.9066, 0.03),
])
def test_fixture_fit(criterion, table_id, degree, published, tol):
    fx = paper_fixture(table_id)
    r2 = polyfit(fx.grid, fx.printed_means, degree).r_squared
    check(criterion, abs(r2 - published) <= tol,
          f"table {table_id} degree {degree} R2={r2:.4f} vs {published} +/- {tol}")


def test_fixture_normal_tables_flat():
    start = time.perf_counter()
    details, ok = [], True
    for table_id in (6, 7):
        fx = paper_fixture(table_id)
        brute = max(polyfit(fx.grid, fx.printed_means, d).r_squared for d in range(1, 5))
        verdict = dependence_verdict(fx.grid, fx.printed_means)
        ok &= isinstance(verdict, Flat) and brute < 0.8
        details.append(f"table {table_id} {verdict} (best R2 over d<=4: {brute:.4f})")
    ok &= time.perf_counter() - start < 1.0
    check("6", ok, "; ".join(details))


# --- B: exact counter identities ----------------------------------------------

def test_all_equal_n1000():
    s = new_sort(np.zeros(1000, dtype=np.int64)).stats
    check("7", s.comparisons == 499_500 and s.max_depth == 999,
          f"comparisons={s.comparisons} max_depth={s.max_depth}")


def test_sorted_inputs_n1000():
    up = new_sort(np.arange(1000)).stats.comparisons
    down = new_sort(np.arange(1000)[::-1].copy()).stats.comparisons
    check("8", up == down == 499_500, f"ascending={up} descending={down}")


def test_exhaustive_small_permutations():
    perms = list(itertools.permutations([1, 2, 3]))
    mean3 = Fraction(sum(new_sort(list(p)).stats.comparisons for p in perms), len(perms))
    mismatches = checked = 0
    for n in range(9):
        for perm in itertools.permutations(range(n)):
            counts = {"comparisons": 0, "writes": 0, "max_depth": 0}
            expected = literal_new_sort(perm, counts)
            res = new_sort(np.array(perm, dtype=np.int64))
            checked += 1
            if res.output.tolist() != expected or res.stats.counters() != (
                    counts["comparisons"], counts["writes"], counts["max_depth"]):
                mismatches += 1
    check("9", mean3 == Fraction(8, 3) and mismatches == 0,
          f"n=3 mean={mean3}; {checked} permutations n<=8, {mismatches} mismatches")


def test_random_distinct_average():
    n, trials = 10_000, 50
    gen = np.random.default_rng(SEED)
    mean = np.mean([new_sort(gen.permutation(n)).stats.comparisons for _ in range(trials)])
    target = float(expected_random_comparisons(n))
    rel = abs(mean - target) / target
    check("10", rel <= 0.05, f"mean={mean:.1f} target={target:.1f} rel.err={rel:.4f}")


def test_monotone_transform_invariance():
    gen = np.random.default_rng(SEED)
    transforms = [lambda x: 3 * x + 1, lambda x: np.exp(x / 50), lambda x: x**3,
                  np.arctan, lambda x: -1 / (x + 200)]
    bad = 0
    for i in range(100):
        # a coarse lattice keeps ties and keeps transformed values distinct
        x = gen.integers(-100_000, 100_000, size=int(gen.integers(1, 3000))) / 1000
        if i % 3 == 0:
            x = np.round(x)
        base = new_sort(x, mode="real").stats.counters()
        for f in transforms:
            if new_sort(f(x), mode="real").stats.counters() != base:
                bad += 1
    check("11", bad == 0, f"100 arrays x {len(transforms)} transforms, {bad} differences")


def test_thread_count_determinism():
    cfg = SweepConfig("poisson", "lambda", (1, 2.5, 4), 5000, trials=4, master_seed=99)

    def body(threads):
        return [line.rsplit(",", 1)[0] for line in trial_csv(run_sweep(cfg, threads)).splitlines()]

    runs = [body(1), body(1), body(3), body(8)]
    check("12", all(r == runs[0] for r in runs),
          f"{len(runs[0]) - 1} trial rows identical for threads 1,1,3,8")


# --- C: live replicas ----------------------------------------------------------

def _replica(table_id):
    table = run_sweep(replica_config(table_id, SEED))
    return table.grid, table.means("comparisons")


def test_table1_replica():
    xs, ys = _replica(1)
    rho, ratio = spearman_rho(xs, ys), ys[0] / ys[-1]
    check("13", rho <= -0.9 and ratio >= 4, f"rho={rho:+.3f} ratio K=5/K=50 {ratio:.2f}")


def test_table4_replica_and_real_control():
    xs, ys = _replica(4)
    rho, ratio = spearman_rho(xs, ys), ys[0] / ys[-1]
    control = run_sweep(replica_config(4, SEED, "real", common_seeds=True))
    per_theta = [[t.stats.comparisons for t in row.trials] for row in control.rows]
    same = all(r == per_theta[0] for r in per_theta)
    check("14", rho <= -0.9 and ratio >= 4 and same,
          f"rho={rho:+.3f} ratio={ratio:.2f}; real-mode counts identical at all theta: {same}")


def test_table2_replica():
    xs, ys = _replica(2)
    rho = spearman_rho(xs, ys)
    check("15", rho <= -0.9, f"rho={rho:+.3f}")


def test_table3_replica():
    xs, ys = _replica(3)
    growth = ys[-1] / ys[0]
    check("16", growth >= 1.5, f"mean(P=0.9)/mean(P=0.1)={growth:.2f}")


def test_table6_replica():
    xs, ys = _replica(6)
    verdict = dependence_verdict(xs, ys)
    check("17", isinstance(verdict, Flat), f"{verdict}")


def test_table5_informational_and_exponential_means():
    xs, ys = _replica(5)
    rho = spearman_rho(xs, ys)
    direction = "decreasing" if rho < 0 else "increasing"
    record("18 (table 5 trend)", None, f"rho={rho:+.3f}, mean comparisons {direction} in lambda")
    n, details, ok = 10**5, [], True
    # separate seeds; with a shared seed the scale family repeats one z-score
    for i, lam in enumerate((0.6, 1.0, 6.0)):
        x = generate_keys(DistributionSpec("exponential", {"lambda": lam}), n, SEED + 10 + i,
                          "real")
        se = (1 / lam) / math.sqrt(n)
        z = (x.mean() - 1 / lam) / se
        ok &= abs(z) <= 3
        details.append(f"lambda={lam} z={z:+.2f}")
    check("18", ok, ", ".join(details))


# --- D: sampler statistics -------------------------------------------------------

SAMPLERS = [
    ("discrete_uniform", {"k": 10}),
    ("poisson", {"lambda": 3.5}),
    ("geometric", {"p": 0.3}),
    ("continuous_uniform", {"theta": 25}),
    ("exponential", {"lambda": 2}),
    ("normal", {"mu": 50, "sigma": 10}),
]


def test_sampler_means_and_uniformity():
    n, details, ok = 10**5, [], True
    for family, params in SAMPLERS:
        spec = DistributionSpec(family, params)
        x = generate_keys(spec, n, SEED + 1, "real")
        z = (x.mean() - spec.mean()) / math.sqrt(spec.variance() / n)
        ok &= abs(z) <= 3
        details.append(f"{family} z={z:+.2f}")
    rng = SplitMix64(SEED)
    d = stats.kstest([rng.next_unit() for _ in range(n)], "uniform").statistic
    crit = 1.628 / math.sqrt(n)
    ok &= d < crit
    details.append(f"next_unit KS D={d:.5f} < {crit:.5f}")
    check("19", ok, "; ".join(details))
