# SPDX-License-Identifier: Apache 2.0
# Copyright (c) 2025 IBM

"""Drift detection by statistical process control of the error rate."""

from __future__ import annotations

import logging
import math
from enum import Enum

logger = logging.getLogger(__name__)


class DriftLevel(str, Enum):
    IN_CONTROL = "in-control"
    WARNING = "warning"
    DRIFT = "drift"


class Ddm:
    """Tracks p (error rate) and s = sqrt(p(1-p)/n) against their best values.

    Levels are only reported after ``min_instances`` updates. The state
    resets itself when drift is signalled.
    """

    def __init__(
        self,
        min_instances: int = 30,
        warning_level: float = 2.0,
        drift_level: float = 3.0,
    ) -> None:
        if min_instances < 1:
            raise ValueError("min_instances must be >= 1")
        if not 0 < warning_level < drift_level:
            raise ValueError("need 0 < warning_level < drift_level")
        self.min_instances = min_instances
        self.warning_level = warning_level
        self.drift_level = drift_level
        self.reset()

    def reset(self) -> None:
        self.n = 0
        self.errors = 0
        self.p_min = math.inf
        self.s_min = math.inf
        self.level = DriftLevel.IN_CONTROL

    @property
    def error_rate(self) -> float:
        return self.errors / self.n if self.n else 0.0

    @property
    def std(self) -> float:
        if not self.n:
            return 0.0
        p = self.error_rate
        return math.sqrt(p * (1.0 - p) / self.n)

    def update(self, correct: bool) -> DriftLevel:
        self.n += 1
        if not correct:
            self.errors += 1
        if self.n < self.min_instances:
            self.level = DriftLevel.IN_CONTROL
            return self.level

        p, s = self.error_rate, self.std
        if p + s < self.p_min + self.s_min:
            self.p_min, self.s_min = p, s

        # strict comparisons: a flawless stream (p = s = 0) stays in control
        if p + s > self.p_min + self.drift_level * self.s_min:
            logger.debug("DDM drift after %d instances (p=%.4f, s=%.4f)", self.n, p, s)
            self.reset()
            self.level = DriftLevel.DRIFT
        elif p + s > self.p_min + self.warning_level * self.s_min:
            self.level = DriftLevel.WARNING
        else:
            self.level = DriftLevel.IN_CONTROL
        return self.level


def ddm_update(state: Ddm, correct: bool) -> tuple[Ddm, DriftLevel]:
    return state, state.update(correct)
