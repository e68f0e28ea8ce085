# SPDX-License-Identifier: Apache 2.0
# Copyright (c) 2025 IBM

"""Stream instances, label spaces and the stream-level error types."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np

if TYPE_CHECKING:
    from collections.abc import Sequence


class StreamError(ValueError):
    """Base class for errors raised while producing or consuming a stream."""


class StreamFormatError(StreamError):
    """A recorded row could not be turned into an instance."""

    def __init__(self, message: str, line: int, column: int | None = None) -> None:
        where = f"line {line}" if column is None else f"line {line}, column {column}"
        super().__init__(f"{where}: {message}")
        self.line = line
        self.column = column


class EmptyStreamError(StreamError):
    """The source holds no instances at all."""


class DimensionMismatchError(ValueError):
    """A feature vector does not have the dimension a component expects."""

    def __init__(self, expected: int, actual: int, where: str = "") -> None:
        prefix = f"{where}: " if where else ""
        super().__init__(f"{prefix}expected {expected} features, got {actual}")
        self.expected = expected
        self.actual = actual


class UnlabeledInstanceError(StreamError):
    """A labeled instance was required but the label is missing."""

    def __init__(self, time_index: int) -> None:
        super().__init__(f"instance at time_index {time_index} has no label")
        self.time_index = time_index


@dataclass(frozen=True, eq=False)
class Instance:
    """One timestamped feature vector with an optional class id.

    ``feature_ids`` names the original columns the features came from. It is
    ``None`` while the stream still carries every column in order, and is set
    once columns have been dropped.
    """

    time_index: int
    features: np.ndarray
    label: int | None = None
    feature_ids: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        features = np.asarray(self.features, dtype=np.float64)
        if features.ndim != 1 or features.size == 0:
            raise StreamError(
                f"instance {self.time_index}: features must be a non-empty vector"
            )
        if not np.all(np.isfinite(features)):
            raise StreamError(
                f"instance {self.time_index}: features must be finite"
            )
        if self.time_index < 0:
            raise StreamError(f"time_index must be >= 0, got {self.time_index}")
        if self.feature_ids is not None and len(self.feature_ids) != features.size:
            raise StreamError(
                f"instance {self.time_index}: {len(self.feature_ids)} feature ids "
                f"for {features.size} features"
            )
        features.setflags(write=False)
        object.__setattr__(self, "features", features)

    @property
    def dimension(self) -> int:
        return int(self.features.size)

    @property
    def column_ids(self) -> tuple[int, ...]:
        if self.feature_ids is None:
            return tuple(range(self.dimension))
        return self.feature_ids

    def with_features(
        self, features: np.ndarray, feature_ids: tuple[int, ...] | None = None
    ) -> Instance:
        """Copy of this instance carrying other features (label and time kept)."""
        ids = self.feature_ids if feature_ids is None else feature_ids
        return Instance(self.time_index, features, self.label, ids)

    def with_time_index(self, time_index: int) -> Instance:
        return Instance(time_index, self.features, self.label, self.feature_ids)

    def select(self, positions: Sequence[int]) -> Instance:
        """Keep only the given feature positions."""
        ids = self.column_ids
        kept_ids = tuple(ids[p] for p in positions)
        return Instance(
            self.time_index, self.features[list(positions)], self.label, kept_ids
        )


@dataclass
class ClassSpace:
    """Dense integer ids for opaque label strings, interned in first-seen order."""

    labels: list[str] = field(default_factory=list)
    _ids: dict[str, int] = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("class labels must be distinct")
        self._ids = {label: i for i, label in enumerate(self.labels)}

    @property
    def cardinality(self) -> int:
        return len(self.labels)

    def intern(self, label: str) -> int:
        class_id = self._ids.get(label)
        if class_id is None:
            class_id = len(self.labels)
            self.labels.append(label)
            self._ids[label] = class_id
        return class_id

    def label_of(self, class_id: int) -> str:
        if 0 <= class_id < len(self.labels):
            return self.labels[class_id]
        # ids the stream never produced, e.g. the fallback prediction of an
        # untrained learner on an empty class space
        return str(class_id)

    def __contains__(self, label: object) -> bool:
        return label in self._ids

    def __len__(self) -> int:
        return len(self.labels)


def surviving_positions(source_ids: Sequence[int], target: Instance) -> list[int]:
    """Positions of ``source_ids`` whose columns are still present in ``target``.

    When the target carries no column ids, the first ``target.dimension``
    positions survive.
    """
    if target.feature_ids is None:
        if target.dimension > len(source_ids):
            raise StreamError(
                f"cannot grow from {len(source_ids)} to {target.dimension} features"
            )
        return list(range(target.dimension))
    wanted = set(target.feature_ids)
    positions = [p for p, column in enumerate(source_ids) if column in wanted]
    if len(positions) != target.dimension:
        raise StreamError(
            f"columns {sorted(wanted - set(source_ids))} reappeared; "
            "feature re-appearance is not supported"
        )
    return positions
