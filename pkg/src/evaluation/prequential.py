# SPDX-License-Identifier: Apache 2.0
# Copyright (c) 2025 IBM

"""Prequential (test-then-train) evaluation of an incremental classifier."""

from __future__ import annotations

import logging
import time
from collections.abc import Callable, Iterable
from dataclasses import dataclass
from enum import Enum

import numpy as np
from pydantic import BaseModel, Field, computed_field
from scipy.integrate import cumulative_trapezoid

from src.learners.learner_base import IncrementalClassifier
from src.selection.scaling import RunningScaler
from src.selection.sis import SisConfig, SisLearner
from src.streams.instances import (
    ClassSpace,
    DimensionMismatchError,
    Instance,
    StreamError,
    UnlabeledInstanceError,
    surviving_positions,
)

from .metrics import SECONDS_PER_HOUR, ConfusionMatrix, ram_hour_cost, windowed_accuracy

logger = logging.getLogger(__name__)

BYTES_PER_KB = 1024.0


class PrequentialConfig(BaseModel):
    metrics_window: int = Field(
        default=20, ge=1, description="Window length of the windowed accuracy series"
    )
    size_sample_every: int = Field(
        default=100, ge=1, description="Instances between model size samples"
    )
    sis: SisConfig = Field(
        default_factory=SisConfig, description="Instance selection settings when SIS is enabled"
    )


class RunStatus(str, Enum):
    COMPLETED = "completed"
    FAILED = "failed"


class SizeSample(BaseModel):
    position: int = Field(..., description="Position of the last instance processed")
    cpu_seconds: float = Field(
        default=0.0, description="Cumulative learner CPU time at the sample"
    )
    size_kb: float = Field(..., description="Estimated model size")


class PrequentialReport(BaseModel):
    """Everything measured during one run; percentages are in [0, 100]."""

    learner: str = Field(..., description="Learner name, e.g. hat+sis")
    scenario: str | None = Field(default=None, description="Scenario name or source")
    labels: list[str] = Field(default_factory=list, description="Label string of every class id")
    metrics_window: int = Field(default=20, description="Window of the windowed series")
    time_indices: list[int] = Field(default_factory=list)
    true_labels: list[int] = Field(default_factory=list)
    predicted_labels: list[int] = Field(default_factory=list)
    correct: list[bool] = Field(default_factory=list)
    running_accuracy: list[float] = Field(default_factory=list)
    running_kappa: list[float] = Field(default_factory=list)
    windowed_accuracy: list[float] = Field(default_factory=list)
    cpu_seconds: list[float] = Field(
        default_factory=list, description="Cumulative learner CPU time after every instance"
    )
    size_samples: list[SizeSample] = Field(default_factory=list)
    confusion: list[list[int]] = Field(default_factory=list)
    status: RunStatus = Field(default=RunStatus.COMPLETED)
    failure: str | None = Field(default=None, description="Why the run stopped early")
    failed_at: int | None = Field(default=None, description="Stream position of the failure")

    @computed_field
    @property
    def n_instances(self) -> int:
        return len(self.correct)

    @computed_field
    @property
    def accuracy(self) -> float:
        return self.running_accuracy[-1] if self.running_accuracy else 0.0

    @computed_field
    @property
    def kappa(self) -> float:
        return self.running_kappa[-1] if self.running_kappa else 0.0

    @computed_field
    @property
    def elapsed_seconds(self) -> float:
        return self.cpu_seconds[-1] if self.cpu_seconds else 0.0

    @computed_field
    @property
    def model_size_kb(self) -> float:
        return self.size_samples[-1].size_kb if self.size_samples else 0.0

    @computed_field
    @property
    def cost_ram_hours(self) -> float:
        return ram_hour_cost(
            [s.size_kb for s in self.size_samples], [s.cpu_seconds for s in self.size_samples]
        )

    def resource_series(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Per-instance CPU time, last sampled size and cumulative cost."""
        n = self.n_instances
        sizes = np.zeros(n)
        costs = np.zeros(n)
        if self.size_samples:
            positions = np.array([s.position for s in self.size_samples])
            sample_kb = np.array([s.size_kb for s in self.size_samples])
            sample_hours = np.array([s.cpu_seconds for s in self.size_samples]) / SECONDS_PER_HOUR
            sample_cost = cumulative_trapezoid(sample_kb, sample_hours, initial=0.0)
            latest = np.searchsorted(positions, np.arange(n), side="right") - 1
            sampled = latest >= 0
            sizes[sampled] = sample_kb[latest[sampled]]
            costs[sampled] = sample_cost[latest[sampled]]
        return np.asarray(self.cpu_seconds), sizes, costs


class PrequentialAborted(RuntimeError):
    """Raised when a run cannot continue; carries the partial report."""

    def __init__(self, report: PrequentialReport, position: int, reason: str) -> None:
        super().__init__(f"run aborted at stream position {position}: {reason}")
        self.report = report
        self.position = position


@dataclass
class RunHooks:
    """Optional callbacks observing the test and train stages."""

    on_predict: Callable[[int, Instance, int], None] | None = None
    on_learn: Callable[[int, Instance], None] | None = None


def prequential_run(
    stream: Iterable[Instance],
    learner: IncrementalClassifier,
    sis_enabled: bool = False,
    cfg: PrequentialConfig | None = None,
    hooks: RunHooks | None = None,
    class_space: ClassSpace | None = None,
    scenario: str | None = None,
) -> PrequentialReport:
    """
    Test then train ``learner`` on every instance of ``stream``.

    Each raw instance updates the running scaler and is then scaled. The
    learner predicts it, the metrics are updated, and only then does the
    learner train on it. With ``sis_enabled`` the learner is wrapped so that
    training goes through instance selection.

    Raises:
        PrequentialAborted: on an unlabeled instance, a malformed stream or a
            feature dimension the run cannot follow. The partial report is
            attached and marked failed.
    """
    cfg = cfg or PrequentialConfig()
    hooks = hooks or RunHooks()
    if sis_enabled and not isinstance(learner, SisLearner):
        learner = SisLearner(learner, cfg.sis)

    report = PrequentialReport(
        learner=learner.learner_type, scenario=scenario, metrics_window=cfg.metrics_window
    )
    scaler = RunningScaler()
    cm = ConfusionMatrix()
    cpu = 0.0
    processed = 0
    logger.info("prequential run of %s started", learner.learner_type)

    try:
        for raw in stream:
            if raw.label is None:
                raise UnlabeledInstanceError(raw.time_index)
            if scaler.dimension is not None and raw.column_ids != scaler.feature_ids:
                keep = surviving_positions(scaler.feature_ids, raw)
                logger.info(
                    "feature dimension %d -> %d at t=%d",
                    scaler.dimension,
                    len(keep),
                    raw.time_index,
                )
                scaler.restrict(keep)
                started = time.process_time()
                learner.adapt_dimension(keep)
                cpu += time.process_time() - started
            x = scaler.update(raw).transform(raw)

            started = time.process_time()
            predicted = learner.predict_one(x)
            cpu += time.process_time() - started
            if hooks.on_predict is not None:
                hooks.on_predict(processed, x, predicted)

            _record(report, cm, x, predicted)

            started = time.process_time()
            learner.learn_one(x)
            cpu += time.process_time() - started
            if hooks.on_learn is not None:
                hooks.on_learn(processed, x)

            report.cpu_seconds.append(cpu)
            if processed % cfg.size_sample_every == 0:
                _sample_size(report, learner, processed, cpu)
            processed += 1
    except (StreamError, DimensionMismatchError) as e:
        if len(report.cpu_seconds) < len(report.correct):
            report.cpu_seconds.append(cpu)
        _finish(report, cm, cfg, class_space, learner, processed)
        report.status = RunStatus.FAILED
        report.failure = str(e)
        report.failed_at = processed
        logger.error("run of %s aborted at position %d: %s", report.learner, processed, e)
        raise PrequentialAborted(report, processed, str(e)) from e

    _finish(report, cm, cfg, class_space, learner, processed)
    logger.info(
        "prequential run of %s finished: %d instances, accuracy %.2f%%, kappa %.2f%%",
        report.learner,
        report.n_instances,
        report.accuracy,
        report.kappa,
    )
    return report


def _record(
    report: PrequentialReport, cm: ConfusionMatrix, x: Instance, predicted: int
) -> None:
    cm.update(x.label, predicted)
    report.time_indices.append(x.time_index)
    report.true_labels.append(x.label)
    report.predicted_labels.append(predicted)
    report.correct.append(predicted == x.label)
    report.running_accuracy.append(100.0 * cm.accuracy())
    report.running_kappa.append(100.0 * cm.kappa())


def _sample_size(
    report: PrequentialReport, learner: IncrementalClassifier, position: int, cpu: float
) -> None:
    report.size_samples.append(
        SizeSample(position=position, cpu_seconds=cpu, size_kb=learner.size_bytes() / BYTES_PER_KB)
    )


def _finish(
    report: PrequentialReport,
    cm: ConfusionMatrix,
    cfg: PrequentialConfig,
    class_space: ClassSpace | None,
    learner: IncrementalClassifier,
    processed: int,
) -> None:
    last = processed - 1
    if last >= 0 and (not report.size_samples or report.size_samples[-1].position != last):
        _sample_size(report, learner, last, report.cpu_seconds[-1])
    report.windowed_accuracy = windowed_accuracy(report.correct, cfg.metrics_window).tolist()
    report.confusion = cm.counts.tolist()
    if class_space is not None:
        report.labels = list(class_space.labels)
