# SPDX-License-Identifier: Apache 2.0
# Copyright (c) 2025 IBM

import copy
from abc import ABC, abstractmethod
from collections.abc import Sequence

from src.streams.instances import DimensionMismatchError, Instance

__all__ = ["DimensionMismatchError", "IncrementalClassifier", "FALLBACK_LABEL"]

# prediction of a learner that has never seen a label
FALLBACK_LABEL = 0


class IncrementalClassifier(ABC):
    """Abstract base class for one-pass classifiers.

    Every implementation must be able to predict at any time, including
    before it has learned anything, and must look at each training instance
    once.
    """

    def __init__(self) -> None:
        self._default_label: int | None = None
        self._dimension: int | None = None

    @property
    @abstractmethod
    def learner_type(self) -> str:
        """Return the registry name of this learner."""
        pass

    @abstractmethod
    def learn_one(self, x: Instance) -> None:
        """
        Update the model with one labeled instance.

        Args:
            x: Instance whose label is set
        """
        pass

    @abstractmethod
    def predict_one(self, x: Instance) -> int:
        """
        Predict the class id of an instance.

        Args:
            x: Instance to classify; its label, if any, is ignored

        Returns:
            Class id; the default label when nothing has been learned yet
        """
        pass

    @abstractmethod
    def reset(self) -> None:
        """Forget all learned state while keeping hyperparameters."""
        pass

    @abstractmethod
    def size_bytes(self) -> int:
        """Return an estimate of the model's memory footprint in bytes."""
        pass

    @property
    def default_label(self) -> int:
        """The first label ever observed, or FALLBACK_LABEL."""
        if self._default_label is None:
            return FALLBACK_LABEL
        return self._default_label

    @property
    def dimension(self) -> int | None:
        return self._dimension

    def observe_label(self, label: int) -> None:
        """Record the first label ever seen. Survives reset()."""
        if self._default_label is None:
            self._default_label = label

    def clone(self) -> "IncrementalClassifier":
        """Fresh, untrained copy with identical hyperparameters."""
        twin = copy.deepcopy(self)
        twin.reset()
        return twin

    def adapt_dimension(self, keep: Sequence[int]) -> None:
        """
        Follow the stream when features disappear.

        Args:
            keep: positions of the current features that survive

        The default re-initialises learned state; hyperparameters are kept.
        """
        self.reset()
        self._dimension = len(keep)

    def _check_dimension(self, x: Instance) -> None:
        if self._dimension is None:
            self._dimension = x.dimension
        elif x.dimension != self._dimension:
            raise DimensionMismatchError(
                self._dimension, x.dimension, f"{self.learner_type} at t={x.time_index}"
            )

    def _require_label(self, x: Instance) -> int:
        if x.label is None:
            raise ValueError(
                f"{self.learner_type}: instance {x.time_index} has no label to learn"
            )
        self.observe_label(x.label)
        return x.label
