# SPDX-License-Identifier: Apache 2.0
# Copyright (c) 2025 IBM

"""Accuracy, Kappa, windowed accuracy and RAM-hour cost."""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np
from scipy.integrate import trapezoid

SECONDS_PER_HOUR = 3600.0


class ConfusionMatrix:
    """Counts indexed by (true class, predicted class); grows with new ids."""

    def __init__(self, n_classes: int = 0) -> None:
        self.counts = np.zeros((n_classes, n_classes), dtype=np.int64)

    @classmethod
    def from_array(cls, array: Sequence[Sequence[int]] | np.ndarray) -> ConfusionMatrix:
        counts = np.asarray(array, dtype=np.int64)
        if counts.ndim != 2 or counts.shape[0] != counts.shape[1]:
            raise ValueError(f"confusion matrix must be square, got shape {counts.shape}")
        if np.any(counts < 0):
            raise ValueError("confusion matrix entries must be >= 0")
        cm = cls()
        cm.counts = counts.copy()
        return cm

    @property
    def n_classes(self) -> int:
        return int(self.counts.shape[0])

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    @property
    def correct(self) -> int:
        return int(np.trace(self.counts))

    def update(self, true: int, predicted: int) -> ConfusionMatrix:
        needed = max(true, predicted) + 1
        if needed > self.n_classes:
            grown = np.zeros((needed, needed), dtype=np.int64)
            grown[: self.n_classes, : self.n_classes] = self.counts
            self.counts = grown
        self.counts[true, predicted] += 1
        return self

    def accuracy(self) -> float:
        if not self.total:
            raise ValueError("accuracy of an empty confusion matrix")
        return self.correct / self.total

    def kappa(self) -> float:
        return kappa(self)


def kappa(cm: ConfusionMatrix) -> float:
    """Cohen's Kappa with chance agreement from the row and column marginals."""
    total = cm.total
    if total < 1:
        raise ValueError("kappa of an empty confusion matrix")
    observed = cm.correct / total
    rows = cm.counts.sum(axis=1) / total
    cols = cm.counts.sum(axis=0) / total
    chance = float(rows @ cols)
    if chance >= 1.0:
        # every count in one diagonal cell
        return 1.0
    return (observed - chance) / (1.0 - chance)


def windowed_accuracy(correct: Sequence[bool] | np.ndarray, window: int = 20) -> np.ndarray:
    """Percent correct over the last min(t+1, window) predictions at every t."""
    if window < 1:
        raise ValueError(f"window must be >= 1, got {window}")
    hits = np.asarray(correct, dtype=np.float64)
    if not hits.size:
        return np.zeros(0)
    cumulative = np.concatenate([[0.0], np.cumsum(hits)])
    ends = np.arange(1, hits.size + 1)
    starts = np.maximum(ends - window, 0)
    return 100.0 * (cumulative[ends] - cumulative[starts]) / (ends - starts)


def ram_hour_cost(
    size_kb: Sequence[float] | np.ndarray, seconds: Sequence[float] | np.ndarray
) -> float:
    """Model size integrated over time in KB-hours, by the trapezoidal rule."""
    sizes = np.asarray(size_kb, dtype=np.float64)
    times = np.asarray(seconds, dtype=np.float64)
    if sizes.shape != times.shape or sizes.ndim != 1:
        raise ValueError(
            f"size and time series must be aligned, got {sizes.shape} and {times.shape}"
        )
    if sizes.size < 2:
        return 0.0
    if np.any(np.diff(times) < 0):
        raise ValueError("time series must be non-decreasing")
    return float(trapezoid(sizes, times / SECONDS_PER_HOUR))
