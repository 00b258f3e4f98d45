# coding: utf-8

# # Re-deriving the published tables
#
# Fixture checks fit the printed mean times. Live checks re-run a sweep on
# operation counters, because seconds from different hardware are not
# comparable. This demo runs the quick checks and one reduced live sweep. The
# full version is `newsort-lab reproduce --table all`.

from newsort_lab import SweepConfig, run_sweep
from newsort_lab.fixtures import PAPER_TABLES, fixture_consistency_report, paper_fixture
from newsort_lab.regression import spearman_rho
from newsort_lab.reproduce import reproduce

for check in reproduce(fixture_only=True):
    print(check.line())

# A few printed means disagree with the mean of their own row.

for row in fixture_consistency_report(paper_fixture(5)):
    if row.flagged:
        print(row)

# Table 3 at a fifth of its published size: larger p gives fewer distinct keys.

d = PAPER_TABLES[3]
small = run_sweep(SweepConfig(d.family, d.vary, d.grid, d.n // 5, trials=3))
means = small.means()
print([round(m) for m in means], "rho", spearman_rho(small.grid, means))
