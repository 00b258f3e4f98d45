# coding: utf-8

# # A parameter sweep at fixed n
#
# Hold n fixed, vary one distribution parameter across a grid and sort several
# independent key arrays at each grid value. Each cell's seed is derived from
# the master seed, so any single cell can be re-run alone.

import tempfile

from newsort_lab import SweepConfig, run_sweep, summarize
from newsort_lab.harness import parse_config, write_sweep

config = parse_config("""
dist=discrete_uniform
vary=k
grid=5:50:5
n=5000
trials=5
seed=42
""")
table = run_sweep(config)

# Fewer distinct keys means more ties and therefore more comparisons.

for g, mean, sd in summarize(table)["comparisons"]:
    print(f"k={g:4g}  mean comparisons {mean:12.1f}  sd {sd:10.1f}")

# Real-valued keys ignore scale. With common seeds every theta sees the same
# underlying uniforms, and the counters match exactly.

control = run_sweep(SweepConfig("continuous_uniform", "theta", (5, 25, 50), 5000,
                                trials=3, key_mode="real", common_seeds=True))
for row in control.rows:
    print(row.grid_value, [t.stats.comparisons for t in row.trials])

# Persisting writes the trial CSV, the summary CSV and a provenance record.

out = tempfile.mkdtemp()
for kind, path in write_sweep(table, out, "uniform_k").items():
    print(kind, path)
