# SPDX-License-Identifier: Apache 2.0
# Copyright (c) 2025 IBM

"""Adaptive windowing change detector and mean estimator.

The window is summarised by an exponential histogram: row ``i`` holds up to
``max_buckets`` buckets of ``2**i`` values each, newest rows first. Every
``clock`` values the window is scanned from the oldest bucket; whenever the
older and newer parts have means further apart than the cut threshold the
oldest bucket is dropped and the scan restarts.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

logger = logging.getLogger(__name__)

# bytes per stored bucket (total and variance) and fixed detector overhead
BUCKET_BYTES = 16
DETECTOR_BYTES = 96


@dataclass
class BucketRow:
    """Buckets of one size, oldest first."""

    totals: list[float] = field(default_factory=list)
    variances: list[float] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.totals)

    def append(self, total: float, variance: float) -> None:
        self.totals.append(total)
        self.variances.append(variance)

    def pop_oldest(self) -> tuple[float, float]:
        return self.totals.pop(0), self.variances.pop(0)


class Adwin:
    def __init__(
        self,
        delta: float = 0.002,
        max_buckets: int = 5,
        clock: int = 32,
        min_window_length: int = 5,
        grace_period: int = 10,
    ) -> None:
        if not 0.0 < delta < 1.0:
            raise ValueError(f"delta must lie in (0, 1), got {delta}")
        if max_buckets < 2:
            raise ValueError("max_buckets must be >= 2")
        self.delta = delta
        self.max_buckets = max_buckets
        self.clock = clock
        self.min_window_length = min_window_length
        self.grace_period = grace_period
        self.reset()

    def reset(self) -> None:
        # rows[0] holds single values
        self.rows: list[BucketRow] = [BucketRow()]
        self.width = 0
        self.total = 0.0
        self.variance = 0.0
        self.ticks = 0
        self.detections = 0

    @property
    def estimation(self) -> float:
        return self.total / self.width if self.width else 0.0

    @property
    def n_buckets(self) -> int:
        return sum(len(row) for row in self.rows)

    def size_bytes(self) -> int:
        return DETECTOR_BYTES + BUCKET_BYTES * self.n_buckets

    def update(self, value: float) -> bool:
        """Add one value in [0, 1]; return True when the window was cut."""
        if not 0.0 <= value <= 1.0:
            raise ValueError(f"ADWIN values must lie in [0, 1], got {value}")
        self.ticks += 1
        self._insert(float(value))
        if self.ticks % self.clock != 0 or self.width <= self.grace_period:
            return False
        changed = self._shrink()
        if changed:
            self.detections += 1
        return changed

    def _insert(self, value: float) -> None:
        if self.width:
            mean = self.total / self.width
            self.variance += self.width * (value - mean) ** 2 / (self.width + 1)
        self.width += 1
        self.total += value
        self.rows[0].append(value, 0.0)
        self._compress()

    def _compress(self) -> None:
        level = 0
        while level < len(self.rows) and len(self.rows[level]) > self.max_buckets:
            row = self.rows[level]
            n = 2**level
            t0, v0 = row.pop_oldest()
            t1, v1 = row.pop_oldest()
            merged_variance = v0 + v1 + n * n * (t0 / n - t1 / n) ** 2 / (2 * n)
            if level + 1 == len(self.rows):
                self.rows.append(BucketRow())
            # merged buckets are the newest of the next, older row
            self.rows[level + 1].append(t0 + t1, merged_variance)
            level += 1

    def _cut(self, n0: int, n1: int, mean_gap: float) -> bool:
        min_len = self.min_window_length
        m = 1.0 / (n0 - min_len + 1) + 1.0 / (n1 - min_len + 1)
        d = math.log(2.0 * math.log(self.width) / self.delta)
        window_variance = self.variance / self.width
        epsilon = math.sqrt(2.0 * m * window_variance * d) + 2.0 / 3.0 * d * m
        return abs(mean_gap) > epsilon

    def _shrink(self) -> bool:
        changed = False
        shrinking = True
        while shrinking and self.width > self.grace_period:
            shrinking = False
            n0, sum0 = 0, 0.0
            n1, sum1 = self.width, self.total
            # walk buckets oldest to newest, never past the newest bucket
            buckets = [
                (2**level, total)
                for level in range(len(self.rows) - 1, -1, -1)
                for total in self.rows[level].totals
            ]
            for size, total in buckets[:-1]:
                n0 += size
                n1 -= size
                sum0 += total
                sum1 -= total
                if n0 < self.min_window_length or n1 < self.min_window_length:
                    continue
                if self._cut(n0, n1, sum0 / n0 - sum1 / n1):
                    self._drop_oldest()
                    changed = shrinking = True
                    break
        return changed

    def _drop_oldest(self) -> None:
        level = len(self.rows) - 1
        n = 2**level
        total, variance = self.rows[level].pop_oldest()
        rest = self.width - n
        if rest:
            rest_mean = (self.total - total) / rest
            self.variance -= variance + n * rest * (total / n - rest_mean) ** 2 / self.width
            self.variance = max(self.variance, 0.0)
        else:
            self.variance = 0.0
        self.width = rest
        self.total -= total
        if not len(self.rows[level]) and level > 0:
            self.rows.pop()
        logger.debug("ADWIN dropped a %d-value bucket, width now %d", n, self.width)


def adwin_update(state: Adwin, value: float) -> tuple[Adwin, bool]:
    return state, state.update(value)
