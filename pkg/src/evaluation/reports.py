# SPDX-License-Identifier: Apache 2.0
# Copyright (c) 2025 IBM

"""Report files written for every run and for batteries of runs."""

from __future__ import annotations

import csv
import logging
from collections.abc import Iterable, Sequence
from pathlib import Path

from .prequential import PrequentialReport

logger = logging.getLogger(__name__)

LOG_FILE = "log.csv"
WINDOWED_FILE = "windowed_accuracy.csv"
SUMMARY_FILE = "summary.csv"
RESOURCES_FILE = "resources.csv"
CONFUSION_FILE = "confusion_matrix.csv"
REPORT_FILE = "report.json"

RUN_FILES = (LOG_FILE, WINDOWED_FILE, SUMMARY_FILE, RESOURCES_FILE, CONFUSION_FILE, REPORT_FILE)

# summary.csv and report.json hold no CPU timings; those go to resources.csv
SUMMARY_METRICS = ("accuracy", "kappa", "size_kb")
TIMING_METRICS = ("time_s", "cost_ram_hours")
SUMMARY_HEADER = ["learner", "scenario", "instances", *SUMMARY_METRICS, "status"]

TIMING_FIELDS = {
    "cpu_seconds": True,
    "elapsed_seconds": True,
    "cost_ram_hours": True,
    "size_samples": {"__all__": {"cpu_seconds"}},
}


def _label_name(report: PrequentialReport, class_id: int) -> str:
    if 0 <= class_id < len(report.labels):
        return report.labels[class_id]
    return str(class_id)


def _check_free(paths: Iterable[Path], force: bool) -> None:
    if force:
        return
    existing = [str(p) for p in paths if p.exists()]
    if existing:
        raise FileExistsError(
            f"refusing to overwrite {', '.join(existing)}; pass force to replace"
        )


def check_outputs_free(directory: str | Path, force: bool = False) -> None:
    """Raise FileExistsError when a run would overwrite report files."""
    out = Path(directory)
    _check_free([out / name for name in RUN_FILES], force)


def summary_row(report: PrequentialReport) -> dict[str, str]:
    return {
        "learner": report.learner,
        "scenario": report.scenario or "",
        "instances": str(report.n_instances),
        "accuracy": f"{report.accuracy:.4f}",
        "kappa": f"{report.kappa:.4f}",
        "size_kb": f"{report.model_size_kb:.4f}",
        "status": report.status.value,
    }


def timing_row(report: PrequentialReport) -> dict[str, str]:
    return {
        "time_s": f"{report.elapsed_seconds:.6f}",
        "cost_ram_hours": f"{report.cost_ram_hours:.6e}",
    }


def write_run_outputs(
    report: PrequentialReport, directory: str | Path, force: bool = False
) -> list[Path]:
    """
    Write every report file of one run into ``directory``.

    Args:
        report: finished or aborted run
        directory: created when missing
        force: replace files left by an earlier run

    Returns:
        The written paths

    Raises:
        FileExistsError: when a file exists and ``force`` is False
    """
    out = Path(directory)
    paths = [out / name for name in RUN_FILES]
    check_outputs_free(out, force)
    out.mkdir(parents=True, exist_ok=True)

    with open(out / LOG_FILE, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["time_index", "true", "predicted", "correct"])
        for t, true, predicted, ok in zip(
            report.time_indices, report.true_labels, report.predicted_labels, report.correct
        ):
            writer.writerow(
                [t, _label_name(report, true), _label_name(report, predicted), int(ok)]
            )

    with open(out / WINDOWED_FILE, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["time_index", f"windowed_accuracy_{report.metrics_window}"])
        for t, value in zip(report.time_indices, report.windowed_accuracy):
            writer.writerow([t, f"{value:.4f}"])

    with open(out / SUMMARY_FILE, "w", newline="") as f:
        writer = csv.DictWriter(f, fieldnames=SUMMARY_HEADER)
        writer.writeheader()
        writer.writerow(summary_row(report))

    cpu, sizes, costs = report.resource_series()
    with open(out / RESOURCES_FILE, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["time_index", "cpu_seconds", "size_kb", "cost_ram_hours"])
        for t, seconds, kb, cost in zip(report.time_indices, cpu, sizes, costs):
            writer.writerow([t, f"{seconds:.6f}", f"{kb:.4f}", f"{cost:.6e}"])

    with open(out / CONFUSION_FILE, "w", newline="") as f:
        writer = csv.writer(f)
        names = [_label_name(report, c) for c in range(len(report.confusion))]
        writer.writerow(["true\\predicted", *names])
        for name, row in zip(names, report.confusion):
            writer.writerow([name, *row])

    (out / REPORT_FILE).write_text(report.model_dump_json(indent=2, exclude=TIMING_FIELDS))
    logger.info("wrote %d report files to %s", len(paths), out)
    return paths


def load_report(path: str | Path) -> PrequentialReport:
    """Read report.json back; CPU timings are not stored and come back as zero."""
    return PrequentialReport.model_validate_json(Path(path).read_text())


def write_aggregate(
    rows: Sequence[dict[str, str | float | int]], path: str | Path, force: bool = False
) -> Path:
    """Write aggregate rows (one dict per row, shared keys) as a CSV table."""
    if not rows:
        raise ValueError("no aggregate rows to write")
    target = Path(path)
    _check_free([target], force)
    target.parent.mkdir(parents=True, exist_ok=True)
    fieldnames = list(rows[0])
    with open(target, "w", newline="") as f:
        writer = csv.DictWriter(f, fieldnames=fieldnames)
        writer.writeheader()
        writer.writerows(rows)
    logger.info("wrote aggregate of %d rows to %s", len(rows), target)
    return target
