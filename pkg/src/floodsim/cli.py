"""
Command-line interface.

    floodsim validate SPEC [--theorem-regime] [--json]
    floodsim generate SPEC [--seed N] [--out FILE] [--max-attempts N] [--erased]
    floodsim flood (--graph FILE | --spec FILE) [--lambda11 X] [--lambda12 X]
                   [--source ID|uniform] [--seed N] [--out FILE]
                   [--reach-curve FILE] [--keep-unreachable]
    floodsim experiment --config PLAN [--out DIR] [--check] [--workers N]
                        [--from-records CSV]

Exit codes: 0 success or passing verdict, 1 validation/verdict failure,
2 usage or config error, 3 generation saturation.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from importlib import resources
from pathlib import Path

import numpy as np

from . import io as fio
from .degree_model import validate_spec
from .errors import (
    ExperimentAborted,
    FloodsimError,
    FormatError,
    GenerationSaturated,
    InsufficientData,
)
from .experiment import convergence_report, plan_limits, run_experiment
from .fpp import flooding, sample_weights
from .graph_gen import generate_simple
from .seeding import DEFAULT_SEED

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_SATURATED = 3

MATCHING_RULES = ("parity_d11", "parity_d22", "balance")


def _emit(text, out):
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def cmd_validate(args):
    spec = fio.read_spec(args.spec, theorem_regime=args.theorem_regime)
    report = validate_spec(spec)
    if args.json:
        print(json.dumps(report.as_dict(), indent=2))
    else:
        for r in report.results:
            mark = "PASS" if r.passed else ("FAIL" if r.required else "warn")
            print(f"{mark:4s}  {r.rule:20s} {r.detail}")
        print("valid" if report.ok else "invalid: " + ", ".join(r.rule for r in report.failed()))
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_generate(args):
    spec = fio.read_spec(args.spec)
    report = validate_spec(spec)
    # graphicality failures surface as saturation; only the matching needs these
    broken = [r.rule for r in report.results if r.rule in MATCHING_RULES and not r.passed]
    if broken:
        print("invalid spec: " + ", ".join(broken), file=sys.stderr)
        return EXIT_FAIL
    g = generate_simple(spec, np.random.default_rng(args.seed),
                        max_attempts=args.max_attempts, erased=args.erased)
    _emit(fio.format_edge_list(g, args.seed), args.out)
    return EXIT_OK


def cmd_flood(args):
    rng = np.random.default_rng(args.seed)
    if args.graph:
        g, wg, _ = fio.read_edge_list(args.graph)
        if wg is None:
            wg = sample_weights(g, args.lambda11, args.lambda12, rng)
    else:
        spec = fio.read_spec(args.spec)
        g = generate_simple(spec, rng, max_attempts=args.max_attempts)
        wg = sample_weights(g, args.lambda11, args.lambda12, rng)
    if args.source == "uniform":
        source = int(rng.integers(g.n1))
    else:
        try:
            source = int(args.source)
        except ValueError:
            print(f"--source must be a node id or 'uniform', got {args.source!r}", file=sys.stderr)
            return EXIT_USAGE
        if not 0 <= source < g.n1:
            print(f"source {source} is not an active node (active ids are 0..{g.n1 - 1})",
                  file=sys.stderr)
            return EXIT_FAIL
    res = flooding(wg, source, want_reach_curve=args.reach_curve is not None)
    if res.unreachable_count and not args.keep_unreachable:
        print(f"{res.unreachable_count} nodes are unreachable from source {source}; "
              "pass --keep-unreachable to report flood=inf", file=sys.stderr)
        return EXIT_FAIL
    _emit(fio.fpp_csv(res), args.out)
    if args.reach_curve is not None:
        fio.reach_curve_csv(res, args.reach_curve)
    return EXIT_OK


def _load_plan(config):
    if config == "default":
        text = resources.files("floodsim").joinpath("plans/default.txt").read_text(encoding="utf-8")
        return fio.parse_plan(text)
    return fio.read_plan(config)


def _print_report(report):
    print("kappa,n_success,median_norm,limit,distance,stderr")
    for r in report.rows:
        print(",".join(fio._csv_cell(x) for x in
                       (r.kappa, r.n_success, r.median_norm, r.limit, r.distance, r.stderr)))
    print(f"inversions={report.inversions} allowed={report.allowed_inversions} "
          f"band_ok={report.band_ok} verdict={report.verdict()}")


def cmd_experiment(args):
    plan = _load_plan(args.config)
    if args.from_records:
        records = fio.read_records(args.from_records)
        limits = plan_limits(plan)
    else:
        try:
            result = run_experiment(plan, workers=args.workers)
        except ExperimentAborted as exc:
            print("experiment aborted; per-kappa failure table:", file=sys.stderr)
            for k, v in exc.table.items():
                print(f"  {k}: {v}", file=sys.stderr)
            return EXIT_FAIL
        records, limits = result.records, result.limits
        out = Path(args.out or "results")
        out.mkdir(parents=True, exist_ok=True)
        fio.records_csv(records, out / "records.csv")
        fio.summary_csv(result.summary, out / "summary.csv")
        fio.timings_csv(records, out / "timings.csv")
        print(f"wrote {out / 'records.csv'} and {out / 'summary.csv'}")
    try:
        report = convergence_report(records, limits, band=plan.band)
    except InsufficientData as exc:
        print(f"no verdict: {exc}")
        return EXIT_FAIL if args.check else EXIT_OK
    _print_report(report)
    if args.check and not report.passed:
        return EXIT_FAIL
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(prog="floodsim", description=__doc__.split("\n\n")[0].strip())
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", help="check a degree spec")
    v.add_argument("spec")
    v.add_argument("--theorem-regime", action="store_true",
                   help="also require min d11 >= 3 and min d21 >= 1")
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_validate)

    g = sub.add_parser("generate", help="sample a simple typed graph")
    g.add_argument("spec")
    g.add_argument("--seed", type=int, default=DEFAULT_SEED)
    g.add_argument("--out")
    g.add_argument("--max-attempts", type=int, default=1000)
    g.add_argument("--erased", action="store_true",
                   help="erase loops and multi-edges instead of rejecting (off-model)")
    g.set_defaults(func=cmd_generate)

    f = sub.add_parser("flood", help="flooding time from one source")
    src = f.add_mutually_exclusive_group(required=True)
    src.add_argument("--graph", help="edge list; weights are sampled if absent")
    src.add_argument("--spec", help="degree spec; a graph is generated from --seed")
    f.add_argument("--lambda11", type=float, default=1.0)
    f.add_argument("--lambda12", type=float, default=1.0)
    f.add_argument("--source", default="uniform")
    f.add_argument("--seed", type=int, default=DEFAULT_SEED)
    f.add_argument("--out")
    f.add_argument("--max-attempts", type=int, default=1000)
    f.add_argument("--reach-curve", metavar="FILE")
    f.add_argument("--keep-unreachable", action="store_true")
    f.set_defaults(func=cmd_flood)

    e = sub.add_parser("experiment", help="Monte Carlo convergence study")
    e.add_argument("--config", required=True, help="plan file, or 'default'")
    e.add_argument("--out", help="output directory (default ./results)")
    e.add_argument("--check", action="store_true", help="exit 1 unless the verdict passes")
    e.add_argument("--workers", type=int, default=1)
    e.add_argument("--from-records", metavar="CSV",
                   help="judge an existing records file instead of simulating")
    e.set_defaults(func=cmd_experiment)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except FormatError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GenerationSaturated as exc:
        print(f"generation saturated: {exc}", file=sys.stderr)
        return EXIT_SATURATED
    except (FileNotFoundError, IsADirectoryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FloodsimError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
