# SPDX-License-Identifier: Apache 2.0
# Copyright (c) 2025 IBM

"""Single runs and batteries of runs."""

from __future__ import annotations

import logging
from collections import defaultdict
from collections.abc import Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from src.evaluation.prequential import (
    PrequentialAborted,
    PrequentialConfig,
    PrequentialReport,
    prequential_run,
)
from src.evaluation.reports import (
    SUMMARY_HEADER,
    TIMING_METRICS,
    check_outputs_free,
    summary_row,
    timing_row,
    write_run_outputs,
)
from src.streams.assembly import build_stream
from src.streams.instances import ClassSpace

from .config import RunConfig
from .learner_factory import create_learner

logger = logging.getLogger(__name__)

AGGREGATED_METRICS = ("accuracy", "kappa", "time_s", "size_kb", "cost_ram_hours")
BATTERY_HEADER = [*SUMMARY_HEADER[:-1], *TIMING_METRICS, "status", "error"]


@dataclass
class RunOutcome:
    config: RunConfig
    report: PrequentialReport | None = None
    written: list[Path] = field(default_factory=list)
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.error is None


def execute(config: RunConfig) -> PrequentialReport:
    """Run the configured prequential evaluation without writing anything."""
    _warn_unpersistent_labels(config)
    space = ClassSpace()
    learner = create_learner(config.learner, config.tree, config.sis)
    stream = build_stream(config.scenario, space)
    settings = PrequentialConfig(metrics_window=config.metrics_window, sis=config.sis)
    return prequential_run(
        stream,
        learner,
        sis_enabled=config.sis_enabled,
        cfg=settings,
        class_space=space,
        scenario=config.display_name,
    )


def _warn_unpersistent_labels(config: RunConfig) -> None:
    scenario = config.scenario
    if (
        config.sis_enabled
        and any(s.is_synthetic for s in scenario.segments)
        and scenario.synthetic.label_persistence == 0.0
    ):
        logger.warning(
            "%s on synthetic segments with label_persistence 0: labels are independent "
            "draws and instance selection has no recent labels to follow",
            config.learner,
        )


def run(config: RunConfig) -> RunOutcome:
    """
    Run one configuration and write its report files.

    An aborted run still writes its partial report, marked failed.
    Configuration, file and overwrite errors propagate.
    """
    check_outputs_free(config.output_dir, config.force)
    try:
        report = execute(config)
    except PrequentialAborted as e:
        written = write_run_outputs(e.report, config.output_dir, config.force)
        return RunOutcome(config, e.report, written, str(e))
    written = write_run_outputs(report, config.output_dir, config.force)
    logger.info(
        "%s on %s: accuracy %.2f%%, kappa %.2f%%",
        report.learner,
        report.scenario,
        report.accuracy,
        report.kappa,
    )
    return RunOutcome(config, report, written)


def _run_isolated(config: RunConfig) -> RunOutcome:
    try:
        return run(config)
    except Exception as e:
        logger.exception("run of %s on %s failed", config.learner, config.display_name)
        return RunOutcome(config, error=f"{type(e).__name__}: {e}")


def run_battery(configs: Sequence[RunConfig], jobs: int = 1) -> list[RunOutcome]:
    """Run every configuration; a failing run never stops the others."""
    if not configs:
        raise ValueError("a battery needs at least one run configuration")
    logger.info("battery of %d runs with %d job(s)", len(configs), jobs)
    if jobs <= 1:
        return [_run_isolated(c) for c in configs]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_run_isolated, configs))


def battery_rows(outcomes: Sequence[RunOutcome]) -> list[dict[str, str]]:
    """One summary row with timings per run; failed runs without a report are marked too."""
    rows = []
    for outcome in outcomes:
        if outcome.report is not None:
            row = {**summary_row(outcome.report), **timing_row(outcome.report)}
        else:
            row = {
                "learner": outcome.config.learner,
                "scenario": outcome.config.display_name,
                "instances": "0",
                "status": "failed",
            }
        row["error"] = outcome.error or ""
        rows.append({key: row.get(key, "") for key in BATTERY_HEADER})
    return rows


def _metrics(report: PrequentialReport) -> dict[str, float]:
    return {
        "accuracy": report.accuracy,
        "kappa": report.kappa,
        "time_s": report.elapsed_seconds,
        "size_kb": report.model_size_kb,
        "cost_ram_hours": report.cost_ram_hours,
    }


def aggregate(outcomes: Sequence[RunOutcome]) -> list[dict[str, str | int | float]]:
    """Mean, population standard deviation, min and max of every metric per learner.

    Only completed runs enter the statistics; failures are counted.
    """
    by_learner: dict[str, list[dict[str, float]]] = defaultdict(list)
    failures: dict[str, int] = defaultdict(int)
    for outcome in outcomes:
        if outcome.ok and outcome.report is not None:
            by_learner[outcome.report.learner].append(_metrics(outcome.report))
        else:
            by_learner.setdefault(outcome.config.learner, [])
            failures[outcome.config.learner] += 1

    rows: list[dict[str, str | int | float]] = []
    for learner in sorted(by_learner):
        summaries = by_learner[learner]
        for metric in AGGREGATED_METRICS:
            values = np.array([s[metric] for s in summaries])
            stats = (
                (values.mean(), values.std(), values.min(), values.max())
                if values.size
                else (np.nan,) * 4
            )
            rows.append(
                {
                    "learner": learner,
                    "metric": metric,
                    "runs": int(values.size),
                    "failed": failures[learner],
                    "mean": float(stats[0]),
                    "std": float(stats[1]),
                    "min": float(stats[2]),
                    "max": float(stats[3]),
                }
            )
    return rows
