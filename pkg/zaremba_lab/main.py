#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Module parsing the command line, merging and validating the config, starting the logger and finally running one
of the subcommands. Every run is framed by a RunManifest. The signal_handler adds the possibility to interrupt a
run, the handler function catches and logs unexpected errors.

Subcommands:
    - verify: minimal-M scan of a denominator range
    - count: the counting experiment with its probes
    - expand: growth and flattening probes on a subset of SL2(Z/qZ)
    - dimension: box-counting estimates of the dimension of the bounded-quotient Cantor sets

Exit codes: 0 success, 1 mathematical failure found, 2 usage or invalid input, 3 resource cap.
"""

import argparse
import logging
import os
import signal
import sys
from dataclasses import asdict
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

import _paths
from model.continued_fractions.fractal import SumSet, estimate_dimension
from model.continued_fractions.zaremba import KNOWN_DIMENSIONS, coverage, korobov_fit, verify_range
from model.experiments.counting import (CONTROLS, ExperimentCell, check_consistency, control_sets, derive_parameters,
                                       fit_error_exponent, run_experiment, sweep)
from model.experiments.probe import run_probes
from model.experiments.report import CSV_COLUMNS, ExperimentConfig, RunManifest
from model.group.measures import (GSampler, bounded_generation_probe, flattening_iteration, flattening_ratio,
                                  helfgott_profile, nonconcentration, triple_product, uniform_on)
from model.group.sl2 import GroupElement, congruence_coset, generator_set, random_element
from model.scheduling.scheduler import WorkerPool
from model.storage.range_cache import RangeCache
from model.utilities.exceptions import (CacheCorruptionException, CapExceededException, ConfigHashMismatchException,
                                        DegenerateFitException, GroupCapExceededException,
                                        PreconditionException)
from model.utilities.export import CsvExport, JsonExport
from model.utilities.loading_bar import Loader
from model.utilities.utilities import handler, init_logger, read_config, signal_handler, split_str_to_list
from validate import ConfigValidator, report_error

signal.signal(signal.SIGINT, signal_handler)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_CAP = 3

Outcome = Tuple[int, List[Path]]


def _int_list(value: str) -> List[int]:
    try:
        return [int(item) for item in split_str_to_list(value)]
    except ValueError as error:
        raise argparse.ArgumentTypeError(f"expected a comma separated list of integers, got '{value}'") from error


def build_parser() -> argparse.ArgumentParser:
    """
    @return: The parser of all subcommands; every subcommand takes --config, --out, --shards and --seed.
    """
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="YAML config file, the packaged defaults otherwise")
    common.add_argument("--out", help="output directory, ./results by default")
    common.add_argument("--shards", type=int, help="worker processes")
    common.add_argument("--seed", type=int, help="seed of all random choices")

    parser = argparse.ArgumentParser(prog="zlab", description="Zaremba laboratory: continued fractions, "
                                                              "Cantor-type sum sets and expansion in SL2(Z/qZ).")
    subparsers = parser.add_subparsers(dest="command", required=True)

    verify = subparsers.add_parser("verify", parents=[common], help="minimal M for every q of a range")
    verify.add_argument("--from", dest="q_from", type=int, required=True)
    verify.add_argument("--to", dest="q_to", type=int, required=True)
    verify.add_argument("--max-quotient", dest="max_quotient", type=int, default=5)
    verify.add_argument("--cache", help="resumable cache file")

    count = subparsers.add_parser("count", parents=[common], help="counting experiment")
    count.add_argument("--q", type=int, required=True)
    count.add_argument("--tau", type=float)
    count.add_argument("--M", type=int)
    count.add_argument("--N", type=int)
    count.add_argument("--control", choices=CONTROLS, default="fractal")
    count.add_argument("--json", help="path of the JSON report")
    count.add_argument("--sweep-N", dest="sweep_N", type=_int_list,
                       help="comma separated block lengths; runs one cell per N and fits the error exponent")

    expand = subparsers.add_parser("expand", parents=[common], help="expansion probes")
    expand.add_argument("--q", type=int, required=True)
    expand.add_argument("--set", dest="set_kind", choices=("S", "coset", "random"), default="S")
    expand.add_argument("--probe", choices=("triple", "flatten", "generate", "nonconc"), default="triple")
    expand.add_argument("--N", type=int, default=10, help="number of generators of S")
    expand.add_argument("--size", type=int, default=20, help="size of a random set")
    expand.add_argument("--level", type=int, default=1, help="level Q of the congruence coset")

    dimension = subparsers.add_parser("dimension", parents=[common], help="box-counting dimension estimates")
    dimension.add_argument("--M", type=_int_list, help="comma separated quotient bounds")
    dimension.add_argument("--t-samples", dest="t_samples", type=_int_list, required=True)
    return parser


def load_config(args: argparse.Namespace) -> Tuple[ExperimentConfig, Dict[str, Any]]:
    """
    Merges the config file with the command line overrides.

    @return: The config and the merged raw dict that was validated.
    """
    values = read_config(args.config) if args.config else dict()
    overrides = {"seed": args.seed, "shards": args.shards}
    if args.command == "count":
        overrides.update({"tau": args.tau, "M": args.M})
    merged = dict(values)
    merged.update({key: value for key, value in overrides.items() if value is not None})
    return ExperimentConfig.from_dict(merged), merged


def cmd_verify(args: argparse.Namespace, config: ExperimentConfig, out: Path) -> Outcome:
    """
    Exit 0 iff every q of the range has a numerator with quotients ≤ max-quotient.
    """
    cache = RangeCache(args.cache, config.hash) if args.cache else None
    with Loader(f"Verifying [{args.q_from}, {args.q_to}]...", "Done", enabled=config.show_progress):
        report = verify_range(args.q_from, args.q_to, args.max_quotient, cache=cache,
                              pool=WorkerPool(config.shards), node_cap=config.cap("node_cap"))

    name = f"verify_{args.q_from}_{args.q_to}_M{args.max_quotient}"
    rows = [record._asdict() for record in report.records]
    path = CsvExport(out, config.hash).export(name, rows, columns=["q", "M_min", "witness"])
    summary = {"q_from": args.q_from,
               "q_to": args.q_to,
               "M": args.max_quotient,
               "denominators": len(report.records),
               "failures": report.failures,
               "histogram": report.histogram,
               "korobov": korobov_fit(report.records) if report.records else None,
               "coverage": coverage(report.records, args.max_quotient),
               "interrupted": report.interrupted}
    json_path = JsonExport(out, config.hash).export(name, summary)
    logging.info("Verify run: %s computed, %s cached.", report.computed, report.cached)
    print(f"Verified {len(report.records)} denominators, {len(report.failures)} failure(s).")
    for q in report.failures:
        print(f"q = {q}: no numerator with quotients <= {args.max_quotient}.")
    return (EXIT_OK if report.holds else EXIT_FAILURE), [path, json_path]


def cmd_count(args: argparse.Namespace, config: ExperimentConfig, out: Path) -> Outcome:
    """
    Runs the counting experiment and, for sum set controls, the probes on A.
    """
    if args.sweep_N:
        return _count_sweep(args, config, out)
    t, N = derive_parameters(args.q, config.tau, args.N)
    if args.control != "full":
        check_consistency(args.q, t, N)

    with Loader(f"Counting q = {args.q}...", "Done", enabled=config.show_progress):
        A, B = control_sets(args.q, t, config.M, N, config.seed, args.control)
        report = run_experiment(args.q, t, config.M, N, config.seed, args.control, config, sets=(A, B))
        if isinstance(A, SumSet) and len(A) > 0:
            report.probes = run_probes(args.q, t, config.M, N, A, config)

    name = f"count_q{args.q}_{args.control}"
    if args.json:
        json_path = JsonExport(Path(args.json).parent, config.hash).export(Path(args.json).name, report.to_dict())
    else:
        json_path = JsonExport(out, config.hash).export(name, report.to_dict())
    csv_path = CsvExport(out, config.hash).export(name, [report.to_row()], columns=CSV_COLUMNS)
    print(f"lhs = {report.lhs}, main = {report.main}, relative error = {report.relative_error}.")
    return EXIT_OK, [json_path, csv_path]


def _count_sweep(args: argparse.Namespace, config: ExperimentConfig, out: Path) -> Outcome:
    """
    One counting cell per N of --sweep-N, merged by (q, N, M), plus the empirical error exponent.
    """
    cells = list()
    for N in args.sweep_N:
        t, N = derive_parameters(args.q, config.tau, N)
        if args.control != "full":
            check_consistency(args.q, t, N)
        cells.append(ExperimentCell(args.q, t, config.M, N, config.seed, args.control))

    with Loader(f"Sweeping q = {args.q}...", "Done", enabled=config.show_progress):
        reports = sweep(cells, WorkerPool(config.shards), config)
    try:
        exponent = fit_error_exponent(reports)
    except DegenerateFitException as error:
        logging.info("No error exponent for q = %s: %s", args.q, error)
        exponent = None

    name = f"count_q{args.q}_{args.control}_sweep"
    csv_path = CsvExport(out, config.hash).export(name, [report.to_row() for report in reports], columns=CSV_COLUMNS)
    json_path = JsonExport(out, config.hash).export(name, {"reports": [report.to_dict() for report in reports],
                                                           "error_exponent": exponent})
    print(f"Swept {len(reports)} cells, error exponent: {exponent.eta if exponent else None}.")
    return EXIT_OK, [json_path, csv_path]


def _expansion_set(args: argparse.Namespace, config: ExperimentConfig) -> List[GroupElement]:
    if args.set_kind == "S":
        return generator_set(args.N, args.q)
    if args.set_kind == "coset":
        return sorted(congruence_coset(args.level, args.q, config.cap("group_cap")), key=lambda g: g.encode())
    rng = np.random.default_rng([config.seed, args.q])
    return sorted({random_element(args.q, rng) for _ in range(args.size)}, key=lambda g: g.encode())


def cmd_expand(args: argparse.Namespace, config: ExperimentConfig, out: Path) -> Outcome:
    """
    Exit 1 only if the tripling inequality fails, which would contradict a theorem.
    """
    group_cap = config.cap("group_cap")
    if args.q ** 3 > group_cap:
        raise GroupCapExceededException(args.q, group_cap)
    elements = _expansion_set(args, config)
    pool = WorkerPool(config.shards)
    product_cap = config.cap("product_cap")
    code = EXIT_OK

    with Loader(f"Probing q = {args.q}...", "Done", enabled=config.show_progress):
        if args.probe == "triple":
            growth = helfgott_profile(elements, cap=product_cap, pool=pool)
            result = {"triple": triple_product(elements, product_cap, pool), "helfgott": growth}
            code = EXIT_OK if all(growth.holds.values()) else EXIT_FAILURE
        elif args.probe == "flatten":
            mu = uniform_on(elements)
            result = {"ratio": flattening_ratio(mu, product_cap),
                      "iteration": asdict(flattening_iteration(mu, config.gamma, cap=product_cap))}
        elif args.probe == "generate":
            result = bounded_generation_probe(elements, config.K_max, product_cap, config.cap("group_cap"), pool)
        else:
            result = nonconcentration(elements, config.omega, config.kappa,
                                      GSampler(config.cap("sampler_budget"), config.seed))

    payload = {"q": args.q, "set": args.set_kind, "set_size": len(elements), "probe": args.probe,
               "result": result}
    path = JsonExport(out, config.hash).export(f"expand_q{args.q}_{args.set_kind}_{args.probe}", payload)
    print(f"Probe {args.probe} on {len(elements)} elements of SL2(Z/{args.q}Z) written to {path}.")
    return code, [path]


def cmd_dimension(args: argparse.Namespace, config: ExperimentConfig, out: Path) -> Outcome:
    """
    One CSV row per M plus the (log t, log count) plot data.
    """
    bounds = args.M or [config.M]
    pool = WorkerPool(config.shards)
    rows, points = list(), list()
    with Loader("Counting cylinders...", "Done", max_counter=len(bounds),
                enabled=config.show_progress) as loader:
        for M in bounds:
            estimate = estimate_dimension(M, args.t_samples, config.cap("node_cap"), pool)
            rows.append({"M": M,
                         "w_hat": estimate.w_hat,
                         "intercept": estimate.intercept,
                         "residual": estimate.residual,
                         "degenerate": estimate.degenerate,
                         "hensley_gap": estimate.hensley_gap,
                         "w_known": KNOWN_DIMENSIONS.get(M)})
            points.extend({"M": M, "t": t, "count": count, "x": float(np.log(t)), "y": float(np.log(count))}
                          for t, count in zip(estimate.t_samples, estimate.counts))
            loader.increment()

    export = CsvExport(out, config.hash)
    paths = [export.export("dimension", rows,
                           columns=["M", "w_hat", "intercept", "residual", "degenerate", "hensley_gap", "w_known"]),
             export.export("dimension_plot_data", points, columns=["M", "t", "count", "x", "y"])]
    for row in rows:
        print(f"M = {row['M']}: w_hat = {row['w_hat']:.6f}, M(1 - w_hat) = {row['hensley_gap']:.4f}")
    return EXIT_OK, paths


COMMANDS: Dict[str, Callable[[argparse.Namespace, ExperimentConfig, Path], Outcome]] = {
    "verify": cmd_verify,
    "count": cmd_count,
    "expand": cmd_expand,
    "dimension": cmd_dimension,
}


def run(argv: Optional[Sequence[str]] = None, path: Optional[str] = None) -> int:
    """
    Runs one subcommand.

    @param argv: Command line arguments without the program name, sys.argv by default.
    @param path: Base directory for the log directory, the CWD by default.
    @return: The exit code.
    """
    args = build_parser().parse_args(argv)
    path = Path(path) if path else Path(os.getcwd())

    if args.config:
        is_valid, report = ConfigValidator.validate_config_file(args.config)
        if not is_valid:
            report_error(report)
            return EXIT_USAGE

    config, merged = load_config(args)
    is_valid, report = ConfigValidator.validate_config(merged)
    if not is_valid:
        report_error(report)
        return EXIT_USAGE

    init_logger(path, config.to_dict())
    sys.excepthook = handler
    logging.info("Running %s with config hash %s.", args.command, config.hash)

    out = Path(args.out) if args.out else _paths.all_paths.get("output_path")
    inputs = {key: value for key, value in vars(args).items() if value is not None}
    manifest = RunManifest(args.command, config.hash, inputs)
    manifest.write(out)

    artifacts: List[Path] = list()
    try:
        code, artifacts = COMMANDS[args.command](args, config, out)
    except (PreconditionException, CacheCorruptionException, ConfigHashMismatchException,
            DegenerateFitException) as error:
        print(f"Error: {error}")
        logging.error("%s failed: %s", args.command, error)
        code = EXIT_USAGE
    except CapExceededException as error:
        print(f"Resource cap: {error}")
        logging.error("%s hit a cap: %s", args.command, error)
        code = EXIT_CAP

    manifest.finalize(out, "ok" if code == EXIT_OK else "failed", code, artifacts)
    return code
