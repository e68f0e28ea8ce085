# SPDX-License-Identifier: Apache 2.0
# Copyright (c) 2025 IBM

"""Prequential evaluation: metrics, the test-then-train loop and report files."""

from .metrics import ConfusionMatrix, kappa, ram_hour_cost, windowed_accuracy
from .prequential import (
    PrequentialAborted,
    PrequentialConfig,
    PrequentialReport,
    RunHooks,
    RunStatus,
    SizeSample,
    prequential_run,
)
from .reports import (
    RUN_FILES,
    SUMMARY_HEADER,
    TIMING_METRICS,
    check_outputs_free,
    load_report,
    summary_row,
    timing_row,
    write_aggregate,
    write_run_outputs,
)

__all__ = [
    "ConfusionMatrix",
    "PrequentialAborted",
    "PrequentialConfig",
    "PrequentialReport",
    "RUN_FILES",
    "RunHooks",
    "RunStatus",
    "SUMMARY_HEADER",
    "SizeSample",
    "TIMING_METRICS",
    "check_outputs_free",
    "kappa",
    "load_report",
    "prequential_run",
    "ram_hour_cost",
    "summary_row",
    "timing_row",
    "write_aggregate",
    "windowed_accuracy",
    "write_run_outputs",
]
