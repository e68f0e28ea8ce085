# SPDX-License-Identifier: Apache 2.0
# Copyright (c) 2025 IBM

"""Majority-class learner: the simplest deterministic baseline."""

from __future__ import annotations

from typing import TYPE_CHECKING

from .learner_base import IncrementalClassifier

if TYPE_CHECKING:
    from src.streams.instances import Instance

# bytes per tracked class count
COUNT_BYTES = 16


class MajorityClassifier(IncrementalClassifier):
    """Predicts the most frequent label learned so far; ties go to the lowest id."""

    def __init__(self) -> None:
        super().__init__()
        self._counts: dict[int, int] = {}

    @property
    def learner_type(self) -> str:
        return "majority"

    def learn_one(self, x: Instance) -> None:
        self._check_dimension(x)
        label = self._require_label(x)
        self._counts[label] = self._counts.get(label, 0) + 1

    def predict_one(self, x: Instance) -> int:
        self._check_dimension(x)
        if not self._counts:
            return self.default_label
        return min(self._counts, key=lambda label: (-self._counts[label], label))

    def reset(self) -> None:
        self._counts = {}
        self._dimension = None

    def size_bytes(self) -> int:
        return COUNT_BYTES * len(self._counts)

    @property
    def class_counts(self) -> dict[int, int]:
        return dict(self._counts)
