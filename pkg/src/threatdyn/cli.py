"""Command-line interface: run, sweep, analyze, report.

Exit codes: 0 success, 1 validation/config/schema error, 2 I/O error.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import replace

from . import analytics
from .config import SimConfig, load_config
from .params import DesignSpec, ParameterSet, ValidationError, PARAM_COLUMNS
from .socio import run_simulation
from .sweep import (SweepResult, execute_sweep, read_records_csv, records_table,
                    sample_design, write_records_csv, CSV_COLUMNS, OUTPUT_COLUMNS,
                    ParseError, SchemaError)

_DEFAULTS = SimConfig()


def _workers_default() -> int:
    env = os.environ.get("THREATDYN_WORKERS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="threatdyn",
        description="Deterministic threat-perception system dynamics: single runs, "
                    "parameter sweeps, and the statistics suite over sweep CSVs.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_config(p):
        p.add_argument("--config", metavar="FILE",
                       help="config file ([sim]/[design]/[couplings]/[ranges.*]); "
                            f"defaults: dt={_DEFAULTS.dt}, horizon={_DEFAULTS.horizon}, "
                            f"tau={_DEFAULTS.tau}, rho={_DEFAULTS.rho}")

    p_run = sub.add_parser("run", help="simulate one parameter set and print the record")
    add_config(p_run)
    p_run.add_argument("--set", action="append", default=[], metavar="NAME=VALUE",
                       help="override one parameter (repeatable); unset parameters "
                            "default to the midpoint of their sweep range")

    p_sweep = sub.add_parser("sweep", help="run a seeded design of experiments and write CSV")
    add_config(p_sweep)
    p_sweep.add_argument("--seed", type=int, default=None,
                         help=f"design seed (default {_DEFAULTS.design.seed})")
    p_sweep.add_argument("--n", type=int, default=None,
                         help=f"number of runs (default {_DEFAULTS.design.n_runs})")
    p_sweep.add_argument("--workers", type=int, default=None,
                         help="worker threads (default $THREATDYN_WORKERS or 1); "
                              "output is identical for any value")
    p_sweep.add_argument("--out", required=True, metavar="CSV", help="output CSV path")

    p_an = sub.add_parser("analyze", help="print one named analysis of a sweep CSV")
    p_an.add_argument("csv", help="sweep CSV produced by the sweep command")
    p_an.add_argument("analysis", choices=sorted(analytics.ANALYSES),
                      help="which table to print")

    p_rep = sub.add_parser("report", help="write every analysis table to a directory")
    p_rep.add_argument("csv", help="sweep CSV produced by the sweep command")
    p_rep.add_argument("--out", required=True, metavar="DIR", help="output directory")
    return parser


def _load(config_path) -> SimConfig:
    if config_path is None:
        return SimConfig()
    return load_config(config_path)


def _parse_overrides(pairs) -> dict:
    overrides = {}
    for pair in pairs:
        if "=" not in pair:
            raise ValidationError(f"--set expects NAME=VALUE, got {pair!r}")
        name, value = pair.split("=", 1)
        name = name.strip()
        if name not in PARAM_COLUMNS:
            raise ValidationError(f"--set: unknown parameter {name!r}")
        try:
            overrides[name] = float(value)
        except ValueError:
            raise ValidationError(f"--set {name}: not a number: {value!r}") from None
    return overrides


def cmd_run(args) -> int:
    config = _load(args.config)
    overrides = _parse_overrides(args.set)
    values = {}
    for r in config.design.ranges:
        values[r.name] = overrides.get(r.name, (r.low + r.high) / 2.0)
    record = run_simulation(ParameterSet(**values), config)
    print(f"run_id = {record.run_id}")
    for name in PARAM_COLUMNS:
        print(f"{name} = {getattr(record.params, name)!r}")
    for name in OUTPUT_COLUMNS:
        print(f"{name} = {getattr(record, name)!r}")
    return 0


def cmd_sweep(args) -> int:
    config = _load(args.config)
    design_spec = config.design
    if args.seed is not None:
        design_spec = replace(design_spec, seed=args.seed)
    if args.n is not None:
        design_spec = replace(design_spec, n_runs=args.n)
    config = replace(config, design=design_spec)
    config.validate()
    workers = args.workers if args.workers is not None else _workers_default()
    design = sample_design(design_spec)
    result = execute_sweep(design, config, workers=workers,
                           seed=design_spec.seed, progress=True)
    write_records_csv(result, args.out)
    print(f"wrote {result.n} records to {args.out}", file=sys.stderr)
    return 0


def cmd_analyze(args) -> int:
    table = records_table(read_records_csv(args.csv).records)
    name = args.analysis
    if name in analytics.REGRESSION_ANALYSES:
        dependent = ("nationalism_level" if name == "nationalism-drivers"
                     else "anti_immigrant_sentiment")
        reg = analytics.run_regression_analysis(table, name)
        print(analytics.format_regression_text(reg, dependent, title=name))
    elif name == "correlations":
        columns = [c for c in CSV_COLUMNS if c != "run_id"]
        corr = analytics.pearson_matrix(table, columns)
        print(analytics.format_correlation_csv(corr))
    elif name == "histograms":
        for column in analytics.HISTOGRAM_COLUMNS:
            edges, counts = analytics.histogram(table, column, 15)
            skew = analytics.skewness(table, column)
            print(f"{column}: skewness = {skew:.4f}")
            for i, count in enumerate(counts):
                print(f"  [{edges[i]:+.4f}, {edges[i + 1]:+.4f}): {count}")
    return 0


def cmd_report(args) -> int:
    result = read_records_csv(args.csv)
    table = records_table(result.records)
    os.makedirs(args.out, exist_ok=True)

    def write(name, text):
        with open(os.path.join(args.out, name), "w", encoding="utf-8") as fh:
            fh.write(text + "\n")

    for name in analytics.REGRESSION_ANALYSES:
        dependent = ("nationalism_level" if name == "nationalism-drivers"
                     else "anti_immigrant_sentiment")
        reg = analytics.run_regression_analysis(table, name)
        write(f"{name}.txt", analytics.format_regression_text(reg, dependent, title=name))
        write(f"{name}.csv", analytics.format_regression_csv(reg))

    columns = [c for c in CSV_COLUMNS if c != "run_id"]
    write("correlations.csv",
          analytics.format_correlation_csv(analytics.pearson_matrix(table, columns)))

    for column in analytics.HISTOGRAM_COLUMNS:
        edges, counts = analytics.histogram(table, column, 50)
        lines = ["bin_left,bin_right,count"]
        lines += [f"{float(edges[i])!r},{float(edges[i + 1])!r},{counts[i]}"
                  for i in range(len(counts))]
        write(f"hist_{column}.csv", "\n".join(lines))

    # figure-input subsets: sentiment x conservatism under nationalism quartiles
    for tag, rule in (("low", "lowest_quartile"), ("high", "highest_quartile")):
        sub = analytics.quartile_subset(
            table, analytics.SubsetFilter("nationalism_level", rule))
        lines = ["anti_immigrant_sentiment,social_conservatism"]
        lines += [f"{float(a)!r},{float(s)!r}" for a, s in
                  zip(sub["anti_immigrant_sentiment"], sub["social_conservatism"])]
        write(f"scatter_{tag}_nationalism.csv", "\n".join(lines))

    print(f"report written to {args.out}", file=sys.stderr)
    return 0


_COMMANDS = {"run": cmd_run, "sweep": cmd_sweep, "analyze": cmd_analyze,
             "report": cmd_report}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ValidationError, SchemaError, ParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
