# SPDX-License-Identifier: Apache 2.0
# Copyright (c) 2025 IBM

"""Linear spatio-temporal distance between scaled instances."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from src.streams.instances import DimensionMismatchError, Instance


@dataclass(frozen=True)
class DistanceParams:
    horizon_n: int = 200

    def __post_init__(self) -> None:
        if self.horizon_n < 1:
            raise ValueError(f"horizon_n must be >= 1, got {self.horizon_n}")


def time_distance(t: int, i: int, params: DistanceParams) -> float:
    return abs(t - i) / params.horizon_n


def spatial_distance(a: Sequence[float] | np.ndarray, b: Sequence[float] | np.ndarray) -> float:
    a_arr = np.asarray(a, dtype=np.float64)
    b_arr = np.asarray(b, dtype=np.float64)
    if a_arr.shape != b_arr.shape:
        raise DimensionMismatchError(a_arr.size, b_arr.size, "spatial distance")
    return float(np.linalg.norm(a_arr - b_arr))


def spatio_temporal_distance(
    target: Instance, past: Instance, params: DistanceParams
) -> float:
    """Time term plus Euclidean term, unweighted. Both instances must be scaled."""
    return time_distance(
        target.time_index, past.time_index, params
    ) + spatial_distance(target.features, past.features)


def distances_to(
    target: Instance,
    matrix: np.ndarray,
    time_indices: np.ndarray,
    params: DistanceParams,
) -> np.ndarray:
    """Distances from ``target`` to every row of ``matrix`` at once."""
    if matrix.shape[1] != target.dimension:
        raise DimensionMismatchError(matrix.shape[1], target.dimension, "buffer")
    spatial = np.linalg.norm(matrix - target.features, axis=1)
    temporal = np.abs(target.time_index - time_indices) / params.horizon_n
    return temporal + spatial
