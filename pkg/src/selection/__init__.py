# SPDX-License-Identifier: Apache 2.0
# Copyright (c) 2025 IBM

"""Instance selection: online scaling, spatio-temporal distance and SIS training."""

from .distance import (
    DistanceParams,
    distances_to,
    spatial_distance,
    spatio_temporal_distance,
    time_distance,
)
from .scaling import RunningScaler
from .sis import (
    Ranking,
    RecentBuffer,
    SisConfig,
    SisLearner,
    WindowSearchStats,
    buffer_push,
    initial_best_window,
    optimal_window_train,
    rank_by_distance,
    reorder,
    resize_to_target,
    sis_train_step,
)

__all__ = [
    "DistanceParams",
    "Ranking",
    "RecentBuffer",
    "RunningScaler",
    "SisConfig",
    "SisLearner",
    "WindowSearchStats",
    "buffer_push",
    "distances_to",
    "initial_best_window",
    "optimal_window_train",
    "rank_by_distance",
    "reorder",
    "resize_to_target",
    "sis_train_step",
    "spatial_distance",
    "spatio_temporal_distance",
    "time_distance",
]
