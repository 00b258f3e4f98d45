"""Command-line entry point: ``newsort-lab <command> ...``.

Exit codes: 0 success, 1 finished with a negative verdict (Flat fit, failed
reproduction check), 2 usage or input error.
"""
from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from . import harness, regression
from .core_sort import ALGORITHMS, make_keys, verify_sorted_permutation
from .fixtures import PAPER_TABLES
from .reproduce import FAIL, reproduce
from .rng import FAMILIES, DistributionSpec, ParameterError, SplitMix64, draw_key
from .svgplot import scatter_svg


class CliError(Exception):
    def __init__(self, message: str, code: int = 2):
        super().__init__(message)
        self.code = code


def _write_text(path, text: str) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        Path(path).write_text(text)


def _parse_params(items) -> dict:
    params = {}
    for item in items or []:
        name, sep, value = item.partition("=")
        if not sep:
            raise CliError(f"--params expects name=value, got {item!r}")
        try:
            params[name.strip()] = float(value)
        except ValueError:
            raise CliError(f"parameter {name!r} is not a number: {value!r}") from None
    return params


def cmd_generate(args) -> int:
    try:
        spec = DistributionSpec(args.dist, _parse_params(args.params))
    except ParameterError as exc:
        raise CliError(str(exc)) from None
    if args.n < 0:
        raise CliError("--n must be >= 0")
    rng = SplitMix64(args.seed)
    lines = ["key"]
    for _ in range(args.n):
        key = draw_key(spec, args.mode, rng)
        lines.append(str(key) if args.mode == "int" else repr(key))
    _write_text(args.out, "\n".join(lines) + "\n")
    return 0


def _read_keys(path, mode):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from None
    values = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or (lineno == 1 and line == "key"):
            continue
        try:
            v = int(line) if mode == "int" else float(line)
        except ValueError:
            raise CliError(f"{path}: line {lineno}: cannot parse key {line!r}") from None
        if mode == "real" and math.isnan(v):
            raise CliError(f"{path}: line {lineno}: NaN key")
        values.append(v)
    return values


def cmd_sort(args) -> int:
    values = _read_keys(args.input, args.mode)
    keys = make_keys(values, args.mode)
    outcome = ALGORITHMS[args.algorithm](keys, args.mode)
    if not verify_sorted_permutation(keys, outcome.output):
        raise CliError("internal error: output failed verification", 1)
    out = args.out
    if out is None:
        base = Path(args.input).parent if args.stats_out == "-" else Path(args.stats_out).parent
        out = base / f"{Path(args.input).stem}_sorted.csv"
    fmt = str if args.mode == "int" else repr
    _write_text(out, "\n".join(["key"] + [fmt(v) for v in outcome.output.tolist()]) + "\n")
    s = outcome.stats
    stats_text = (f"comparisons,writes,max_depth,elapsed_ns\n"
                  f"{s.comparisons},{s.writes},{s.max_depth},{s.elapsed_ns}\n")
    _write_text(args.stats_out, stats_text)
    return 0


def cmd_sweep(args) -> int:
    try:
        text = Path(args.config).read_text()
    except OSError as exc:
        raise CliError(f"cannot read {args.config}: {exc}") from None
    try:
        config = harness.parse_config(text)
    except harness.ConfigError as exc:
        raise CliError(f"{args.config}: {exc}") from None
    table = harness.run_sweep(config, args.threads)
    paths = harness.write_sweep(table, args.out_dir, Path(args.config).stem)
    for kind, path in paths.items():
        print(f"{kind}: {path}")
    return 0


def _columns(path, *names):
    try:
        cols = harness.read_columns(path)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from None
    except ValueError as exc:
        raise CliError(f"{path}: {exc}") from None
    for name in names:
        if name not in cols:
            raise CliError(f"{path}: no column {name!r} (have {', '.join(cols)})")
    return [cols[n] for n in names]


def cmd_fit(args) -> int:
    xs, ys = _columns(args.input, args.xcol, args.ycol)
    verdict = None
    fit = None
    code = 0
    try:
        if args.auto:
            verdict = regression.dependence_verdict(xs, ys, args.max_degree)
            if isinstance(verdict, regression.Flat):
                code = 1
            if verdict.r_squared is not None:
                _, fit = regression.select_degree(xs, ys, args.max_degree)
        else:
            fit = regression.polyfit(xs, ys, args.degree)
    except regression.FitError as exc:
        if str(exc) != "zero variance":
            raise CliError(str(exc)) from None
        verdict, code = regression.Flat(), 1
    _write_text(args.report, regression.format_fit_report(fit, verdict))
    if args.report_csv:
        _write_text(args.report_csv, regression.fit_report_csv(fit, verdict))
    return code


def cmd_reproduce(args) -> int:
    tables = list(PAPER_TABLES) if args.table == "all" else [int(args.table)]
    checks = reproduce(tables, args.seed, args.out_dir, args.fixture_only, args.threads)
    for check in checks:
        print(check.line())
    return 1 if any(c.status == FAIL for c in checks) else 0


def cmd_plot(args) -> int:
    xs, ys = _columns(args.input, args.xcol, args.ycol)
    if not xs:
        raise CliError(f"{args.input}: no data rows")
    curve = None
    if args.fit:
        try:
            coefs = regression.read_fit_coefficients(args.fit)
        except (OSError, regression.FitError) as exc:
            raise CliError(str(exc)) from None
        fit = regression.PolyFit(len(coefs) - 1, coefs, math.nan, math.nan, math.nan, 0)
        curve = fit
    svg = scatter_svg(xs, ys, xlabel=args.xcol, ylabel=args.ycol, title=args.title or "",
                      curve=curve)
    _write_text(args.out, svg)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="newsort-lab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write n seeded variates as a key CSV")
    p.add_argument("--dist", required=True, choices=FAMILIES)
    p.add_argument("--params", nargs="*", default=[], metavar="NAME=VALUE")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=lambda s: int(s, 0), default=0)
    p.add_argument("--mode", choices=("int", "real"), default="int")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("sort", help="sort a key CSV and report counters")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--algorithm", choices=sorted(ALGORITHMS), default="new_sort")
    p.add_argument("--mode", choices=("int", "real"), default="int")
    p.add_argument("--out", default=None, help="sorted CSV (default: <input stem>_sorted.csv beside --stats-out, or beside --in)")
    p.add_argument("--stats-out", default="-")
    p.set_defaults(func=cmd_sort)

    p = sub.add_parser("sweep", help="run a parameter sweep from a key=value config")
    p.add_argument("--config", required=True)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--threads", type=int, default=None)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("fit", help="polynomial fit of one summary column")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--xcol", default="param")
    p.add_argument("--ycol", default="mean_comparisons")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--degree", type=int)
    g.add_argument("--auto", action="store_true")
    p.add_argument("--max-degree", type=int, default=4)
    p.add_argument("--report", default="-")
    p.add_argument("--report-csv", default=None)
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("reproduce", help="re-check the published tables")
    p.add_argument("--table", choices=[str(i) for i in PAPER_TABLES] + ["all"], default="all")
    p.add_argument("--seed", type=lambda s: int(s, 0), default=0)
    p.add_argument("--out-dir", default=None)
    p.add_argument("--fixture-only", action="store_true")
    p.add_argument("--threads", type=int, default=None)
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("plot", help="SVG scatter of a summary CSV, optionally with a fit")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--xcol", default="param")
    p.add_argument("--ycol", default="mean_comparisons")
    p.add_argument("--fit", default=None)
    p.add_argument("--title", default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_plot)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"newsort-lab {args.command}: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
