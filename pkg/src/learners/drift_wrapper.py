# SPDX-License-Identifier: Apache 2.0
# Copyright (c) 2025 IBM

"""Learner wrapper that restarts its inner learner when DDM signals drift."""

from __future__ import annotations

import logging
from collections import deque
from collections.abc import Sequence

from src.drift.ddm import Ddm, DriftLevel
from src.streams.instances import Instance

from .learner_base import IncrementalClassifier

logger = logging.getLogger(__name__)

WARNING_BUFFER_CAP = 1000
# bytes per buffered warning-window instance besides its features
BUFFERED_ENTRY_BYTES = 64
DDM_BYTES = 64


class DdmWrapped(IncrementalClassifier):
    """Tests, then trains ``inner``; on drift a fresh copy learns the warning window."""

    def __init__(
        self,
        inner: IncrementalClassifier,
        detector: Ddm | None = None,
        warning_buffer_cap: int = WARNING_BUFFER_CAP,
    ) -> None:
        super().__init__()
        self.inner = inner
        self.detector = detector or Ddm()
        self.warning_buffer: deque[Instance] = deque(maxlen=warning_buffer_cap)
        self.drifts = 0
        self.warnings = 0

    @property
    def learner_type(self) -> str:
        return f"{self.inner.learner_type}+ddm"

    def learn_one(self, x: Instance) -> None:
        self._check_dimension(x)
        label = self._require_label(x)
        correct = self.inner.predict_one(x) == label
        level = self.detector.update(correct)
        if level is DriftLevel.IN_CONTROL:
            self.warning_buffer.clear()
        elif level is DriftLevel.WARNING:
            if not self.warning_buffer:
                self.warnings += 1
            self.warning_buffer.append(x)
        else:
            self._restart()
            return
        self.inner.learn_one(x)

    def _restart(self) -> None:
        self.drifts += 1
        logger.info(
            "DDM drift: restarting %s on %d warning-window instances",
            self.inner.learner_type,
            len(self.warning_buffer),
        )
        fresh = self.inner.clone()
        for buffered in self.warning_buffer:
            fresh.learn_one(buffered)
        self.inner = fresh
        self.warning_buffer.clear()

    def predict_one(self, x: Instance) -> int:
        return self.inner.predict_one(x)

    def reset(self) -> None:
        self.inner.reset()
        self.detector.reset()
        self.warning_buffer.clear()
        self._dimension = None

    def adapt_dimension(self, keep: Sequence[int]) -> None:
        self.inner.adapt_dimension(keep)
        self.warning_buffer = deque(
            (e.select(keep) for e in self.warning_buffer), maxlen=self.warning_buffer.maxlen
        )
        self._dimension = len(keep)

    def size_bytes(self) -> int:
        buffered = sum(e.features.nbytes + BUFFERED_ENTRY_BYTES for e in self.warning_buffer)
        return self.inner.size_bytes() + buffered + DDM_BYTES


def wrap_with_ddm(inner: IncrementalClassifier) -> IncrementalClassifier:
    return DdmWrapped(inner)
