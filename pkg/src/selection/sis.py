# SPDX-License-Identifier: Apache 2.0
# Copyright (c) 2025 IBM

"""Similarity-based instance selection.

Each training step ranks the buffered recent instances by spatio-temporal
distance to the newest one, resets the base learner and retrains it on the
shortest ranking prefix whose error on the most recent instances falls
below a threshold. The prefix length is searched within a radius of the
previous best length.
"""

from __future__ import annotations

import logging
from collections import deque
from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.learners.learner_base import IncrementalClassifier
from src.streams.instances import (
    Instance,
    StreamError,
    UnlabeledInstanceError,
    surviving_positions,
)

from .distance import DistanceParams, distances_to

logger = logging.getLogger(__name__)

# bookkeeping bytes per buffered entry besides its feature values
ENTRY_OVERHEAD_BYTES = 64


def initial_best_window(capacity_n: int, radius_r: int) -> int:
    return min(capacity_n, max(1, radius_r))


class SisConfig(BaseModel):
    model_config = ConfigDict(validate_assignment=True)

    capacity_n: int = Field(default=200, ge=1, description="Buffer capacity N")
    trial_k: int = Field(default=1, ge=1, description="Recent instances used as trial set")
    radius_r: int = Field(default=10, ge=1, description="Search radius around the previous best window")
    error_threshold_eps: float = Field(
        default=0.1, ge=0.0, le=1.0, description="Accept a window when trial error is below this"
    )
    prev_best_b: int | None = Field(
        default=None, description="Previous best window size; min(N, r) when omitted"
    )

    @model_validator(mode="before")
    @classmethod
    def _default_best(cls, data: Any) -> Any:
        if isinstance(data, dict) and data.get("prev_best_b") is None:
            fields = cls.model_fields
            capacity = data.get("capacity_n", fields["capacity_n"].default)
            radius = data.get("radius_r", fields["radius_r"].default)
            if isinstance(capacity, int) and isinstance(radius, int):
                data = {**data, "prev_best_b": initial_best_window(capacity, radius)}
        return data

    @model_validator(mode="after")
    def _check(self) -> SisConfig:
        if self.trial_k > self.capacity_n:
            raise ValueError(
                f"trial_k ({self.trial_k}) must not exceed capacity_n ({self.capacity_n})"
            )
        if self.prev_best_b is None:
            raise ValueError("prev_best_b could not be derived")
        if not 1 <= self.prev_best_b <= self.capacity_n:
            raise ValueError(
                f"prev_best_b must lie in [1, {self.capacity_n}], got {self.prev_best_b}"
            )
        return self

    def window_limits(self, entries: int) -> tuple[int, int]:
        """Lower and upper window sizes (l, u), both clamped to [1, entries]."""
        lower = min(max(1, self.prev_best_b - self.radius_r), max(entries, 1))
        upper = max(min(entries, self.prev_best_b + self.radius_r), 1)
        return lower, upper


class RecentBuffer:
    """The N most recent labeled instances, oldest first."""

    def __init__(self, capacity_n: int) -> None:
        if capacity_n < 1:
            raise ValueError(f"capacity_n must be >= 1, got {capacity_n}")
        self.capacity_n = capacity_n
        self._entries: deque[Instance] = deque(maxlen=capacity_n)

    def __len__(self) -> int:
        return len(self._entries)

    def __iter__(self) -> Iterator[Instance]:
        return iter(self._entries)

    def __getitem__(self, position: int) -> Instance:
        return self._entries[position]

    @property
    def dimension(self) -> int | None:
        return self._entries[0].dimension if self._entries else None

    @property
    def column_ids(self) -> tuple[int, ...] | None:
        return self._entries[0].column_ids if self._entries else None

    def push(self, x: Instance) -> RecentBuffer:
        if x.label is None:
            raise UnlabeledInstanceError(x.time_index)
        if self._entries and x.time_index <= self._entries[-1].time_index:
            raise StreamError(
                f"buffer entries must have increasing time_index: "
                f"{x.time_index} after {self._entries[-1].time_index}"
            )
        # deque(maxlen) evicts the oldest entry
        self._entries.append(x)
        return self

    def clear(self) -> None:
        self._entries.clear()

    def matrix(self) -> np.ndarray:
        """Features of all entries, one row per entry."""
        return np.vstack([e.features for e in self._entries])

    def time_indices(self) -> np.ndarray:
        return np.fromiter((e.time_index for e in self._entries), dtype=np.int64)

    def most_recent(self, k: int) -> list[Instance]:
        """The ``k`` newest entries in time order."""
        if k <= 0:
            return []
        return list(self._entries)[-k:]

    def select_features(self, positions: Sequence[int]) -> RecentBuffer:
        kept = [e.select(positions) for e in self._entries]
        self._entries = deque(kept, maxlen=self.capacity_n)
        return self

    def size_bytes(self) -> int:
        return sum(e.features.nbytes + ENTRY_OVERHEAD_BYTES for e in self._entries)


def buffer_push(buf: RecentBuffer, x: Instance) -> RecentBuffer:
    return buf.push(x)


def resize_to_target(buf: RecentBuffer, target: Instance | int) -> RecentBuffer:
    """Bring every buffered entry to the target's feature set.

    With an Instance target the entries keep exactly the target's columns;
    with a bare dimension the leading features are kept.
    """
    if not len(buf):
        return buf
    current = buf.dimension
    if isinstance(target, Instance):
        target_dim = target.dimension
        if target_dim > current:
            raise StreamError(
                f"cannot resize {current}-feature entries to {target_dim} features"
            )
        if target_dim == current and target.column_ids == buf.column_ids:
            return buf
        positions = surviving_positions(buf.column_ids, target)
    else:
        target_dim = int(target)
        if target_dim < 1:
            raise ValueError("target dimension must be >= 1")
        if target_dim > current:
            raise StreamError(
                f"cannot resize {current}-feature entries to {target_dim} features"
            )
        if target_dim == current:
            return buf
        positions = list(range(target_dim))
    logger.info("resizing %d buffered entries from %d to %d features", len(buf), current, target_dim)
    return buf.select_features(positions)


@dataclass
class Ranking:
    """Buffer positions sorted by ascending distance to the target."""

    order: np.ndarray
    distances: np.ndarray
    time_indices: np.ndarray
    comparisons: int = 0

    def __len__(self) -> int:
        return int(self.order.size)

    def objective(self) -> float:
        """Sum of absolute differences between consecutive ranked distances."""
        if self.distances.size < 2:
            return 0.0
        return float(np.abs(np.diff(self.distances)).sum())


@lru_cache(maxsize=8)
def _pairs(n: int) -> tuple[np.ndarray, np.ndarray]:
    first, second = np.triu_indices(n, k=1)
    first.flags.writeable = False
    second.flags.writeable = False
    return first, second


def rank_by_distance(distances: np.ndarray, time_indices: np.ndarray) -> tuple[np.ndarray, int]:
    """Positions ordered by (distance, more recent first) and the pair comparisons made."""
    d = np.asarray(distances, dtype=np.float64)
    t = np.asarray(time_indices)
    n = d.size
    first, second = _pairs(n)
    # second_ahead[p]: the later buffer position of pair p ranks first
    second_ahead = (d[second] < d[first]) | (
        (d[second] == d[first]) & (t[second] > t[first])
    )
    ranks = np.bincount(first[second_ahead], minlength=n) + np.bincount(
        second[~second_ahead], minlength=n
    )
    order = np.empty(n, dtype=np.int64)
    order[ranks] = np.arange(n)
    return order, int(second_ahead.size)


def reorder(buf: RecentBuffer, target: Instance, params: DistanceParams) -> Ranking:
    if not len(buf):
        raise ValueError("cannot rank an empty buffer")
    times = buf.time_indices()
    distances = distances_to(target, buf.matrix(), times, params)
    order, comparisons = rank_by_distance(distances, times)
    return Ranking(order, distances[order], times[order], comparisons)


@dataclass
class WindowSearchStats:
    trained: int = 0
    trial_predictions: int = 0
    accepted: bool = False
    window_limits: tuple[int, int] = (0, 0)
    trained_times: list[int] = field(default_factory=list)


def trial_error(learner: IncrementalClassifier, trial: Sequence[Instance]) -> float:
    wrong = sum(learner.predict_one(x) != x.label for x in trial)
    return wrong / len(trial)


def optimal_window_train(
    learner: IncrementalClassifier,
    buf: RecentBuffer,
    ranking: Ranking,
    cfg: SisConfig,
    stats: WindowSearchStats | None = None,
) -> tuple[IncrementalClassifier, int]:
    """Train ``learner`` (already reset) on the shortest acceptable ranking prefix.

    Returns the learner and the new best window size. When no prefix within
    [l, u] brings the trial error below the threshold, the learner keeps all
    u instances and the previous best size is returned.
    """
    best = cfg.prev_best_b
    entries = len(buf)
    if entries == 0:
        return learner, best
    lower, upper = cfg.window_limits(entries)
    trial = buf.most_recent(cfg.trial_k)
    if stats is not None:
        stats.window_limits = (lower, upper)

    for i in range(1, entries + 1):
        if i > upper:
            break
        x = buf[int(ranking.order[i - 1])]
        learner.learn_one(x)
        if stats is not None:
            stats.trained += 1
            stats.trained_times.append(x.time_index)
        if i < lower:
            continue
        error = trial_error(learner, trial)
        if stats is not None:
            stats.trial_predictions += len(trial)
        if error < cfg.error_threshold_eps:
            best = i
            if stats is not None:
                stats.accepted = True
            break
    return learner, best


def sis_train_step(
    learner: IncrementalClassifier,
    buf: RecentBuffer,
    target: Instance,
    cfg: SisConfig,
    params: DistanceParams,
    stats: WindowSearchStats | None = None,
) -> tuple[IncrementalClassifier, RecentBuffer, SisConfig]:
    """One SIS training step for the instance just tested."""
    if target.label is None:
        raise UnlabeledInstanceError(target.time_index)
    if len(buf):
        resize_to_target(buf, target)
        ranking = reorder(buf, target, params)
        learner.reset()
        learner, best = optimal_window_train(learner, buf, ranking, cfg, stats)
        cfg.prev_best_b = best
    else:
        learner.reset()
    buf.push(target)
    return learner, buf, cfg


class SisLearner(IncrementalClassifier):
    """A base learner retrained by instance selection after every instance."""

    def __init__(self, base: IncrementalClassifier, cfg: SisConfig | None = None) -> None:
        super().__init__()
        self.base = base
        self.cfg = (cfg or SisConfig()).model_copy()
        self._initial_best = self.cfg.prev_best_b
        self.params = DistanceParams(self.cfg.capacity_n)
        self.buffer = RecentBuffer(self.cfg.capacity_n)
        self.last_stats = WindowSearchStats()

    @property
    def learner_type(self) -> str:
        return f"{self.base.learner_type}+sis"

    def learn_one(self, x: Instance) -> None:
        label = self._require_label(x)
        self.base.observe_label(label)
        self.last_stats = WindowSearchStats()
        self.base, self.buffer, self.cfg = sis_train_step(
            self.base, self.buffer, x, self.cfg, self.params, self.last_stats
        )
        self._dimension = x.dimension

    def predict_one(self, x: Instance) -> int:
        return self.base.predict_one(x)

    def reset(self) -> None:
        self.base.reset()
        self.buffer.clear()
        self.cfg.prev_best_b = self._initial_best
        self._dimension = None

    def adapt_dimension(self, keep: Sequence[int]) -> None:
        """Shrink the buffered history to the surviving features and keep it."""
        self.buffer.select_features(keep)
        self.base.adapt_dimension(keep)
        self._dimension = len(keep)

    def size_bytes(self) -> int:
        return self.base.size_bytes() + self.buffer.size_bytes()
