# SPDX-License-Identifier: Apache 2.0
# Copyright (c) 2025 IBM

"""Incremental per-feature standardisation."""

from __future__ import annotations

import logging
from typing import TYPE_CHECKING

import numpy as np

from src.streams.instances import DimensionMismatchError, Instance

if TYPE_CHECKING:
    from collections.abc import Sequence

logger = logging.getLogger(__name__)


class RunningScaler:
    """Running mean and population variance, one Welford step per instance.

    An empty scaler adopts the dimension of the first instance it sees.
    Features with zero variance transform to 0.
    """

    def __init__(self) -> None:
        self.count = 0
        self.mean: np.ndarray | None = None
        self.m2: np.ndarray | None = None
        self.feature_ids: tuple[int, ...] | None = None

    @classmethod
    def from_statistics(
        cls,
        count: int,
        mean: Sequence[float],
        variance: Sequence[float],
        feature_ids: Sequence[int] | None = None,
    ) -> RunningScaler:
        """Scaler positioned as if ``count`` instances had produced these statistics."""
        if count < 1:
            raise ValueError("count must be >= 1")
        mean_arr = np.asarray(mean, dtype=np.float64)
        var_arr = np.asarray(variance, dtype=np.float64)
        if mean_arr.shape != var_arr.shape or mean_arr.ndim != 1 or mean_arr.size == 0:
            raise ValueError("mean and variance must be equal-length non-empty vectors")
        if np.any(var_arr < 0):
            raise ValueError("variance must be >= 0")
        scaler = cls()
        scaler.count = count
        scaler.mean = mean_arr.copy()
        scaler.m2 = var_arr * count
        if feature_ids is None:
            scaler.feature_ids = tuple(range(mean_arr.size))
        else:
            scaler.feature_ids = tuple(feature_ids)
        return scaler

    @property
    def dimension(self) -> int | None:
        return None if self.mean is None else int(self.mean.size)

    @property
    def variance(self) -> np.ndarray:
        self._require_data()
        return self.m2 / self.count

    @property
    def std(self) -> np.ndarray:
        return np.sqrt(self.variance)

    def update(self, x: Instance) -> RunningScaler:
        features = x.features
        if self.mean is None:
            self.mean = np.zeros(features.size)
            self.m2 = np.zeros(features.size)
            self.feature_ids = x.column_ids
        elif features.size != self.mean.size:
            raise DimensionMismatchError(self.mean.size, features.size, "scaler")
        self.count += 1
        delta = features - self.mean
        self.mean += delta / self.count
        self.m2 += delta * (features - self.mean)
        # rounding can leave tiny negatives on constant features
        np.maximum(self.m2, 0.0, out=self.m2)
        return self

    def transform(self, x: Instance) -> Instance:
        self._require_data()
        if x.dimension != self.mean.size:
            raise DimensionMismatchError(self.mean.size, x.dimension, "scaler")
        std = self.std
        scaled = np.zeros_like(self.mean)
        nonzero = std > 0
        scaled[nonzero] = (x.features[nonzero] - self.mean[nonzero]) / std[nonzero]
        return x.with_features(scaled)

    def restrict(self, keep: Sequence[int]) -> RunningScaler:
        """Keep the statistics of the given feature positions only."""
        self._require_data()
        positions = list(keep)
        if not positions:
            raise ValueError("cannot restrict a scaler to zero features")
        logger.debug("scaler restricted from %d to %d features", self.mean.size, len(positions))
        self.mean = self.mean[positions]
        self.m2 = self.m2[positions]
        self.feature_ids = tuple(self.feature_ids[p] for p in positions)
        return self

    def reset(self) -> None:
        self.count = 0
        self.mean = None
        self.m2 = None
        self.feature_ids = None

    def _require_data(self) -> None:
        if self.count == 0 or self.mean is None:
            raise ValueError("scaler has not seen any instance")
