"""Parameter sweeps at fixed n: generate, sort, count, aggregate, persist.

Each (grid value, trial) cell gets its own seed from ``derive_trial_seed``.
This makes every cell re-runnable on its own, and the counters do not
depend on thread scheduling.  Wall time is recorded and written out, but
nothing asserts on it.
"""
from __future__ import annotations

import csv
import datetime as _dt
import io
import json
import math
import os
import platform
import statistics
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .core_sort import (
    ALGORITHMS,
    NEW_SORT_WRITES,
    QUICKSORT_WRITES,
    SortStats,
    verify_sorted_permutation,
)
from .rng import DistributionSpec, ParameterError, generate_keys, splitmix_output_at

TRIAL_HEADER = ["param", "trial", "comparisons", "writes", "max_depth", "elapsed_ns"]
SUMMARY_HEADER = ["param", "mean_comparisons", "sd_comparisons", "mean_elapsed_s", "sd_elapsed_s"]
METRICS = ("comparisons", "writes", "max_depth", "elapsed_s")

_SEED_STRIDE = 65537


class VerificationError(RuntimeError):
    """A sort returned something that is not a sorted permutation."""


class ConfigError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class SweepConfig:
    family: str
    vary: str
    grid: tuple[float, ...]
    n: int
    fixed: dict = field(default_factory=dict)
    trials: int = 10
    master_seed: int = 0
    key_mode: str = "int"
    algorithm: str = "new_sort"
    # every grid value reuses the trial seeds of grid index 0
    common_seeds: bool = False

    def __post_init__(self):
        object.__setattr__(self, "grid", tuple(float(g) for g in self.grid))
        if not self.grid:
            raise ConfigError("grid is empty")
        steps = [b - a for a, b in zip(self.grid, self.grid[1:])]
        if not (all(s > 0 for s in steps) or all(s < 0 for s in steps)):
            raise ConfigError("grid must be strictly monotone")
        if self.trials < 1:
            raise ConfigError("trials must be >= 1")
        if self.n < 0:
            raise ConfigError("n must be >= 0")
        if self.key_mode not in ("int", "real"):
            raise ConfigError(f"unknown key mode {self.key_mode!r}")
        if self.algorithm not in ALGORITHMS:
            raise ConfigError(f"unknown algorithm {self.algorithm!r}")
        for g in self.grid:
            self.spec_at(g)

    def spec_at(self, value: float) -> DistributionSpec:
        return DistributionSpec(self.family, {**self.fixed, self.vary: value})


@dataclass(frozen=True)
class TrialRecord:
    grid_value: float
    trial_index: int
    stats: SortStats


@dataclass
class SweepRow:
    grid_value: float
    trials: list[TrialRecord]

    def values(self, metric: str) -> list[float]:
        if metric == "elapsed_s":
            return [t.stats.elapsed_ns / 1e9 for t in self.trials]
        return [getattr(t.stats, metric) for t in self.trials]


@dataclass
class SweepTable:
    config: SweepConfig
    rows: list[SweepRow]

    @property
    def grid(self) -> list[float]:
        return [r.grid_value for r in self.rows]

    def means(self, metric: str = "comparisons") -> list[float]:
        return [m for _, m, _ in summarize(self)[metric]]


def derive_trial_seed(master_seed: int, grid_index: int, trial_index: int) -> int:
    """Output number grid_index*65537 + trial_index + 1 of the master stream."""
    return splitmix_output_at(master_seed, grid_index * _SEED_STRIDE + trial_index + 1)


def run_trial(spec: DistributionSpec, n: int, seed: int, key_mode: str = "int",
              algorithm: str = "new_sort", *, grid_value: float = math.nan,
              trial_index: int = 0) -> TrialRecord:
    keys = generate_keys(spec, n, seed, key_mode)
    outcome = ALGORITHMS[algorithm](keys, key_mode)
    if not verify_sorted_permutation(keys, outcome.output):
        raise VerificationError(
            f"{algorithm} produced an unsorted result for {spec} n={n} seed={seed:#x}"
        )
    return TrialRecord(grid_value, trial_index, outcome.stats)


def default_threads() -> int:
    env = os.environ.get("NEWSORT_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def run_sweep(config: SweepConfig, threads: int | None = None) -> SweepTable:
    tasks = []
    for gi, g in enumerate(config.grid):
        for t in range(config.trials):
            seed = derive_trial_seed(config.master_seed, 0 if config.common_seeds else gi, t)
            tasks.append((config.spec_at(g), seed, g, t))

    def work(task):
        spec, seed, g, t = task
        return run_trial(spec, config.n, seed, config.key_mode, config.algorithm,
                         grid_value=g, trial_index=t)

    threads = threads or default_threads()
    if threads == 1:
        records = [work(t) for t in tasks]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            records = list(pool.map(work, tasks))

    rows = [SweepRow(g, []) for g in config.grid]
    for rec, (_, _, g, _) in zip(records, tasks):
        rows[config.grid.index(g)].trials.append(rec)
    return SweepTable(config, rows)


def _mean_sd(values):
    mean = math.fsum(values) / len(values)
    sd = statistics.stdev(values) if len(values) > 1 else 0.0
    return mean, sd


def summarize(table: SweepTable) -> dict[str, list[tuple[float, float, float]]]:
    """Per metric, ``(grid_value, mean, sample sd)`` for each row."""
    return {
        metric: [(row.grid_value, *_mean_sd(row.values(metric))) for row in table.rows]
        for metric in METRICS
    }


# --- persistence -------------------------------------------------------------

def format_param(value: float) -> str:
    return f"{value:.6g}"


def trial_csv(table: SweepTable) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(TRIAL_HEADER)
    for row in table.rows:
        for rec in row.trials:
            s = rec.stats
            w.writerow([format_param(rec.grid_value), rec.trial_index, s.comparisons,
                        s.writes, s.max_depth, s.elapsed_ns])
    return buf.getvalue()


def summary_csv(table: SweepTable) -> str:
    summ = summarize(table)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SUMMARY_HEADER)
    for (g, mc, sc), (_, me, se) in zip(summ["comparisons"], summ["elapsed_s"]):
        w.writerow([format_param(g), repr(mc), repr(sc), f"{me:.9g}", f"{se:.9g}"])
    return buf.getvalue()


def read_columns(path) -> dict[str, list[float]]:
    """Numeric columns of a CSV file keyed by header name."""
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        cols: dict[str, list[float]] = {name: [] for name in reader.fieldnames or []}
        for row in reader:
            for k, v in row.items():
                cols[k].append(float(v))
    return cols


def provenance(config: SweepConfig | None = None) -> dict:
    """Machine and run description stored next to every persisted run."""
    info = {
        "timestamp": _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds"),
        "os": platform.platform(),
        "machine": platform.machine(),
        "processor": platform.processor() or "unknown",
        "cpu_count": os.cpu_count(),
        "python": platform.python_version(),
        "timed_region": "sort call only (key generation excluded)",
    }
    if config is not None:
        info["config"] = {
            "family": config.family, "vary": config.vary, "fixed": config.fixed,
            "grid": list(config.grid), "n": config.n, "trials": config.trials,
            "master_seed": config.master_seed, "key_mode": config.key_mode,
            "algorithm": config.algorithm, "common_seeds": config.common_seeds,
        }
        info["writes_convention"] = (
            NEW_SORT_WRITES if config.algorithm == "new_sort" else QUICKSORT_WRITES
        )
    return info


def write_sweep(table: SweepTable, out_dir, stem: str = "sweep") -> dict[str, Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = {
        "trials": out / f"{stem}_trials.csv",
        "summary": out / f"{stem}_summary.csv",
        "provenance": out / f"{stem}_provenance.json",
    }
    paths["trials"].write_text(trial_csv(table))
    paths["summary"].write_text(summary_csv(table))
    paths["provenance"].write_text(json.dumps(provenance(table.config), indent=2) + "\n")
    return paths


# --- config files -------------------------------------------------------------

def parse_grid(text: str) -> tuple[float, ...]:
    """``start:stop:step`` (stop included when it lands on the lattice) or a
    comma list."""
    text = text.strip()
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"grid range needs start:stop:step, got {text!r}")
        start, stop, step = (float(p) for p in parts)
        if step == 0 or (stop - start) / step < 0:
            raise ValueError(f"grid step {step} does not move from {start} towards {stop}")
        count = math.floor((stop - start) / step + 1e-9) + 1
        return tuple(round(start + i * step, 12) for i in range(count))
    return tuple(float(v) for v in text.split(",") if v.strip())


_REQUIRED = ("dist", "vary", "grid", "n")


def parse_config(text: str) -> SweepConfig:
    """Flat ``key=value`` sweep config; ``#`` starts a comment."""
    values: dict[str, tuple[str, int]] = {}
    fixed: dict[str, float] = {}
    known = {"dist", "vary", "grid", "n", "trials", "seed", "mode", "algorithm", "common_seeds"}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"expected key=value, got {raw.strip()!r}", lineno)
        key, value = (p.strip() for p in line.split("=", 1))
        if key.startswith("fixed."):
            try:
                fixed[key[len("fixed."):]] = float(value)
            except ValueError:
                raise ConfigError(f"{key} is not a number: {value!r}", lineno) from None
        elif key in known:
            values[key] = (value, lineno)
        else:
            raise ConfigError(f"unknown key {key!r}", lineno)
    for key in _REQUIRED:
        if key not in values:
            raise ConfigError(f"missing required key {key!r}")

    def get(key, conv, default=None):
        if key not in values:
            return default
        value, lineno = values[key]
        try:
            return conv(value)
        except (ValueError, ParameterError) as exc:
            raise ConfigError(f"bad {key}: {exc}", lineno) from None

    def seed(v):
        return int(v, 0) & ((1 << 64) - 1)

    def flag(v):
        if v.lower() not in ("true", "false", "1", "0", "yes", "no"):
            raise ValueError(f"expected a boolean, got {v!r}")
        return v.lower() in ("true", "1", "yes")

    try:
        return SweepConfig(
            family=get("dist", str),
            vary=get("vary", str),
            grid=get("grid", parse_grid),
            n=get("n", int),
            fixed=fixed,
            trials=get("trials", int, 10),
            master_seed=get("seed", seed, 0),
            key_mode=get("mode", str, "int"),
            algorithm=get("algorithm", str, "new_sort"),
            common_seeds=get("common_seeds", flag, False),
        )
    except ConfigError:
        raise
    except ValueError as exc:
        # domain errors come from the family name or from grid/fixed values
        culprit = "dist" if "family" in str(exc) else "grid"
        raise ConfigError(str(exc), values[culprit][1]) from None
