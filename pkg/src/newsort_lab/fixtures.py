"""Published timing tables and the experiment designs behind them.

The CSV files in ``data/`` copy the printed tables exactly, including cells
where the printed mean disagrees with its own trial values.  Use
``fixture_consistency_report`` to list those cells.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from importlib import resources

TABLE_IDS = range(1, 8)
#: Printed-mean deltas above this are flagged as inconsistent.
CONSISTENCY_TOLERANCE = 0.01


@dataclass(frozen=True)
class PaperFixture:
    table_id: int
    grid: tuple[float, ...]
    trials: tuple[tuple[float, ...], ...]  # one tuple of seconds per grid value
    printed_means: tuple[float, ...]
    csv_text: str  # verbatim source, for round-trip checks

    @property
    def n_trials(self) -> int:
        return len(self.trials[0])


@dataclass(frozen=True)
class TableDesign:
    """How one published table was produced, and what it reported."""

    table_id: int
    family: str
    vary: str
    fixed: dict
    grid: tuple[float, ...]
    n: int
    trials: int
    degree: int | None  # polynomial order reported; None where no fit was claimed
    r_squared: float | None
    tolerance: float
    finding: str  # "decreasing", "increasing" or "flat"
    caption: str


def _lattice(start, stop, step):
    count = int(round((stop - start) / step)) + 1
    return tuple(round(start + i * step, 10) for i in range(count))


PAPER_TABLES = {
    1: TableDesign(1, "discrete_uniform", "k", {}, _lattice(5, 50, 5), 20_000, 10,
                   4, 0.9953, 0.02, "decreasing",
                   "Mean sort time vs K for discrete U[1..K], n = 20,000"),
    2: TableDesign(2, "poisson", "lambda", {}, _lattice(1.0, 5.5, 0.5), 50_000, 10,
                   2, 0.9783, 0.02, "decreasing",
                   "Mean sort time vs lambda for Poisson, n = 50,000"),
    3: TableDesign(3, "geometric", "p", {}, _lattice(0.1, 0.9, 0.1), 10_000, 6,
                   4, 0.9065, 0.03, "increasing",
                   "Mean sort time vs P for geometric, n = 10,000"),
    4: TableDesign(4, "continuous_uniform", "theta", {}, _lattice(5, 50, 5), 50_000, 6,
                   4, 0.9927, 0.02, "decreasing",
                   "Mean sort time vs theta for U[0, theta], n = 50,000"),
    5: TableDesign(5, "exponential", "lambda", {},
                   (0.6, 0.7, 0.8, 0.9, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0), 20_000, 6,
                   3, 0.9066, 0.03, "decreasing",
                   "Mean sort time vs lambda for exponential, n = 20,000"),
    6: TableDesign(6, "normal", "mu", {"variance": 100.0}, _lattice(5, 50, 5), 20_000, 6,
                   None, None, 0.0, "flat",
                   "Mean sort time vs mean for normal (variance 100), n = 20,000"),
    7: TableDesign(7, "normal", "variance", {"mu": 50.0}, _lattice(10, 100, 10), 20_000, 6,
                   None, None, 0.0, "flat",
                   "Mean sort time vs variance for normal (mean 50), n = 20,000"),
}


def parse_fixture_csv(text: str, table_id: int) -> PaperFixture:
    rows = list(csv.reader(io.StringIO(text)))
    header, body = rows[0], rows[1:]
    if header[0] != "param" or header[-1] != "printed_mean":
        raise ValueError(f"table {table_id}: unexpected fixture header {header}")
    return PaperFixture(
        table_id=table_id,
        grid=tuple(float(r[0]) for r in body),
        trials=tuple(tuple(float(v) for v in r[1:-1]) for r in body),
        printed_means=tuple(float(r[-1]) for r in body),
        csv_text=text,
    )


def paper_fixture(table_id: int) -> PaperFixture:
    if table_id not in TABLE_IDS:
        raise ValueError(f"no published table {table_id}; expected 1..7")
    text = resources.files("newsort_lab").joinpath(f"data/table{table_id}.csv").read_text()
    return parse_fixture_csv(text, table_id)


def fixture_to_csv(fx: PaperFixture) -> str:
    """Serialise a fixture; parsed values survive a round trip unchanged."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["param"] + [f"t{i + 1}" for i in range(fx.n_trials)] + ["printed_mean"])
    for g, row, mean in zip(fx.grid, fx.trials, fx.printed_means):
        w.writerow([repr(g)] + [repr(v) for v in row] + [repr(mean)])
    return buf.getvalue()


@dataclass(frozen=True)
class ConsistencyRow:
    grid_value: float
    recomputed_mean: float
    printed_mean: float
    delta: float  # printed - recomputed
    flagged: bool


def fixture_consistency_report(fx: PaperFixture) -> list[ConsistencyRow]:
    out = []
    for g, row, printed in zip(fx.grid, fx.trials, fx.printed_means):
        recomputed = sum(row) / len(row)
        delta = printed - recomputed
        out.append(ConsistencyRow(g, recomputed, printed, delta,
                                  abs(delta) > CONSISTENCY_TOLERANCE))
    return out
