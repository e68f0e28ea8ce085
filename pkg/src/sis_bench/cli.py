# SPDX-License-Identifier: Apache 2.0
# Copyright (c) 2025 IBM

"""Command-line entry point: ``sis-bench run`` and ``sis-bench battery``."""

from __future__ import annotations

import argparse
import itertools
import logging
import os
import re
import sys
from collections.abc import Sequence
from pathlib import Path

from pydantic import ValidationError

from src.evaluation.reports import write_aggregate
from src.learners.hoeffding_adaptive_tree import HatConfig
from src.selection.sis import SisConfig
from src.streams.scenarios import (
    SYNTHETIC_SOURCE,
    ScenarioKind,
    ScenarioSpec,
    Segment,
    SyntheticParams,
    load_scenario_spec,
)

from .config import RunConfig, default_output_dir, load_env_file
from .learner_factory import available_learners, default_learner_name
from .runner import aggregate, battery_rows, run, run_battery
from .scenario_catalog import ScenarioName, ScenarioParams, scenario_variants

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_RUN_FAILED = 1
EXIT_USAGE = 2

DEFAULT_SYNTHETIC_LENGTH = 10000
DEFAULT_LABEL_PERSISTENCE = 0.9
_SOURCE_RANGE = re.compile(r"^(?P<path>.+?)(?:@(?P<start>\d*)(?::(?P<length>\d+))?)?$")


def parse_source(text: str, synthetic_length: int = DEFAULT_SYNTHETIC_LENGTH) -> Segment:
    """``PATH``, ``PATH@START`` or ``PATH@START:LENGTH`` as a segment."""
    match = _SOURCE_RANGE.match(text)
    if match is None:
        raise ValueError(f"cannot parse source '{text}'")
    start = int(match["start"]) if match["start"] else 0
    length = int(match["length"]) if match["length"] else None
    if match["path"] == SYNTHETIC_SOURCE and length is None:
        length = synthetic_length
    return Segment(source=match["path"], start=start, length=length)


def _add_common_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--source",
        action="append",
        default=[],
        metavar="PATH[@START[:LENGTH]]",
        help=f"recorded file or {SYNTHETIC_SOURCE}; repeat for multi-segment scenarios",
    )
    parser.add_argument(
        "--scenario",
        choices=[s.value for s in ScenarioName],
        help="benchmark scenario built from the sources",
    )
    parser.add_argument("--scenario-file", type=Path, help="YAML scenario file")
    parser.add_argument("--drop-at", type=int, default=500, help="scenario III drop instance")
    parser.add_argument(
        "--drop",
        type=int,
        nargs="+",
        default=[0],
        metavar="COLUMN",
        help="scenario III columns that disappear",
    )
    parser.add_argument("--delimiter", default=",", help="recorded-file delimiter")
    parser.add_argument("--header", action="store_true", help="recorded files have a header")
    parser.add_argument(
        "--length",
        type=int,
        default=DEFAULT_SYNTHETIC_LENGTH,
        help="instances per synthetic segment without an explicit length",
    )
    parser.add_argument("--n-classes", type=int, default=2)
    parser.add_argument("--n-features", type=int, default=4)
    parser.add_argument("--separation", type=float, default=3.0)
    parser.add_argument(
        "--label-persistence",
        type=float,
        default=DEFAULT_LABEL_PERSISTENCE,
        help="probability that a synthetic label repeats the previous one",
    )

    parser.add_argument("--N", dest="capacity_n", type=int, default=200, help="SIS buffer size")
    parser.add_argument("--k", dest="trial_k", type=int, default=1, help="SIS trial instances")
    parser.add_argument("--r", dest="radius_r", type=int, default=10, help="SIS search radius")
    parser.add_argument(
        "--eps", dest="error_threshold_eps", type=float, default=0.1, help="SIS error threshold"
    )
    parser.add_argument("--grace", type=int, default=200, help="tree grace period")
    parser.add_argument("--delta", type=float, default=1e-7, help="tree split confidence")
    parser.add_argument("--tau", type=float, default=0.05, help="tree tie threshold")
    parser.add_argument("--metrics-window", type=int, default=20)
    parser.add_argument("--out", type=Path, default=None, help="output directory")
    parser.add_argument("--force", action="store_true", help="overwrite existing reports")
    parser.add_argument("--verbose", "-v", action="store_true", help="debug logging")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sis-bench",
        description="Prequential benchmark of streaming classifiers with instance selection",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_parser = sub.add_parser("run", help="evaluate one learner on one scenario")
    run_parser.add_argument(
        "--learner",
        choices=available_learners(),
        default=default_learner_name(),
        help="learner to evaluate",
    )
    run_parser.add_argument("--seed", type=int, default=None, help="seed for all randomness")
    _add_common_arguments(run_parser)

    battery_parser = sub.add_parser("battery", help="learners x scenarios x seeds, aggregated")
    battery_parser.add_argument(
        "--learner",
        action="append",
        choices=available_learners(),
        default=None,
        help="repeat to compare learners",
    )
    battery_parser.add_argument("--seeds", type=int, nargs="+", default=[0])
    battery_parser.add_argument("--jobs", type=int, default=1, help="parallel runs")
    _add_common_arguments(battery_parser)
    return parser


def _synthetic(args: argparse.Namespace) -> SyntheticParams:
    return SyntheticParams(
        n_classes=args.n_classes,
        n_features=args.n_features,
        separation=args.separation,
        label_persistence=args.label_persistence,
    )


def _scenario_params(args: argparse.Namespace, seed: int) -> ScenarioParams:
    return ScenarioParams(
        drop_at=args.drop_at,
        dropped_feature_indices=args.drop,
        seed=seed,
        synthetic=_synthetic(args),
        delimiter=args.delimiter,
        has_header=args.header,
    )


def _plain_scenario(segments: list[Segment], args: argparse.Namespace) -> ScenarioSpec:
    if all(s.is_synthetic for s in segments):
        kind = ScenarioKind.SYNTHETIC_GAUSSIAN
    elif len(segments) == 1:
        kind = ScenarioKind.REPLAY
    else:
        kind = ScenarioKind.ABRUPT_CONCAT
    return ScenarioSpec(
        kind=kind,
        segments=segments,
        synthetic=_synthetic(args),
        delimiter=args.delimiter,
        has_header=args.header,
    )


def scenarios_from_args(
    args: argparse.Namespace, per_source: bool = False
) -> list[tuple[str, ScenarioSpec]]:
    """Named scenario specs the arguments describe.

    With ``per_source`` every source becomes its own scenario unless the
    chosen scenario needs several segments.
    """
    if args.scenario_file is not None:
        if args.source:
            raise ValueError("give either --scenario-file or --source, not both")
        return [(args.scenario_file.stem, load_scenario_spec(args.scenario_file))]
    if not args.source:
        raise ValueError("no data source: give --source or --scenario-file")
    segments = [parse_source(s, args.length) for s in args.source]
    params = _scenario_params(args, seed=0)

    groups = [segments]
    multi_segment = args.scenario in (ScenarioName.II.value, ScenarioName.IV.value)
    if per_source and not multi_segment:
        groups = [[s] for s in segments]

    named = []
    for group in groups:
        stem = "+".join(Path(s.source).stem for s in group)
        if args.scenario is None:
            named.append((stem, _plain_scenario(group, args)))
            continue
        for order, spec in enumerate(scenario_variants(args.scenario, group, params)):
            suffix = f"-{order + 1}" if order else ""
            named.append((f"scenario-{args.scenario}-{stem}{suffix}", spec))
    return named


def _configure_logging(verbose: bool) -> None:
    level = logging.DEBUG if verbose else os.getenv("SIS_LOG_LEVEL", "INFO").upper()
    logging.basicConfig(
        level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s"
    )


def _run_config(
    args: argparse.Namespace,
    learner: str,
    name: str,
    scenario: ScenarioSpec,
    seed: int | None,
    output_dir: Path,
) -> RunConfig:
    return RunConfig(
        learner=learner,
        scenario=scenario,
        scenario_name=name,
        sis=SisConfig(
            capacity_n=args.capacity_n,
            trial_k=args.trial_k,
            radius_r=args.radius_r,
            error_threshold_eps=args.error_threshold_eps,
        ),
        tree=HatConfig(
            grace_period=args.grace, split_confidence=args.delta, tie_threshold=args.tau
        ),
        metrics_window=args.metrics_window,
        output_dir=output_dir,
        seed=seed,
        force=args.force,
    )


def command_run(args: argparse.Namespace) -> int:
    scenarios = scenarios_from_args(args)
    out = args.out or default_output_dir()
    if len(scenarios) == 1:
        targets = [(scenarios[0], out)]
    else:
        targets = [((name, spec), out / name) for name, spec in scenarios]
    status = EXIT_OK
    for (name, spec), directory in targets:
        outcome = run(_run_config(args, args.learner, name, spec, args.seed, directory))
        report = outcome.report
        print(
            f"{report.learner} on {report.scenario}: {report.n_instances} instances, "
            f"accuracy {report.accuracy:.2f}%, kappa {report.kappa:.2f}%, "
            f"time {report.elapsed_seconds:.3f}s, size {report.model_size_kb:.2f}KB, "
            f"cost {report.cost_ram_hours:.3e} RAM-hours -> {directory}"
        )
        if not outcome.ok:
            print(f"run failed: {outcome.error}", file=sys.stderr)
            status = EXIT_RUN_FAILED
    return status


def command_battery(args: argparse.Namespace) -> int:
    learners = args.learner or [default_learner_name()]
    scenarios = scenarios_from_args(args, per_source=True)
    out = args.out or default_output_dir()
    configs = [
        _run_config(
            args, learner, name, spec, seed, out / learner.replace("+", "_") / name / f"seed-{seed}"
        )
        for learner, (name, spec), seed in itertools.product(learners, scenarios, args.seeds)
    ]
    outcomes = run_battery(configs, jobs=args.jobs)
    write_aggregate(battery_rows(outcomes), out / "runs.csv", force=args.force)
    rows = aggregate(outcomes)
    write_aggregate(rows, out / "aggregate.csv", force=args.force)
    for row in rows:
        print(
            f"{row['learner']:>14} {row['metric']:>15}: mean {row['mean']:.4g} "
            f"std {row['std']:.4g} min {row['min']:.4g} max {row['max']:.4g} "
            f"({row['runs']} runs, {row['failed']} failed)"
        )
    failed = sum(not o.ok for o in outcomes)
    if failed:
        print(f"{failed} of {len(outcomes)} runs failed", file=sys.stderr)
        return EXIT_RUN_FAILED
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    load_env_file()
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(args.verbose)
    try:
        if args.command == "run":
            return command_run(args)
        return command_battery(args)
    except (ValidationError, ValueError, FileNotFoundError, FileExistsError) as e:
        print(f"sis-bench: error: {e}", file=sys.stderr)
        return EXIT_USAGE
