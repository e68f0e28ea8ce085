# SPDX-License-Identifier: Apache 2.0
# Copyright (c) 2025 IBM

"""Turn a ScenarioSpec into one continuous instance stream."""

from __future__ import annotations

import logging
from typing import TYPE_CHECKING

import numpy as np

from .instances import ClassSpace, Instance, StreamError
from .recorded import StreamSchema, count_rows, read_recorded_stream
from .scenarios import ScenarioSpec
from .synthetic import draw_segment

if TYPE_CHECKING:
    from collections.abc import Collection, Iterable, Iterator

logger = logging.getLogger(__name__)


def apply_feature_drop(
    stream: Iterable[Instance], drop_at: int, dropped: Collection[int]
) -> Iterator[Instance]:
    """Remove the ``dropped`` columns from every instance with time_index >= drop_at.

    ``dropped`` names original column ids. Surviving instances carry their
    column ids so downstream state can follow the same columns.
    """
    if drop_at < 0:
        raise StreamError(f"drop_at must be >= 0, got {drop_at}")
    dropped_ids = set(dropped)
    if not dropped_ids:
        yield from stream
        return

    keep: list[int] | None = None
    for instance in stream:
        if instance.time_index < drop_at:
            yield instance
            continue
        if keep is None:
            columns = instance.column_ids
            unknown = dropped_ids - set(columns)
            if unknown:
                raise StreamError(
                    f"cannot drop unknown feature indices {sorted(unknown)} "
                    f"from {len(columns)} features"
                )
            keep = [p for p, column in enumerate(columns) if column not in dropped_ids]
            if not keep:
                raise StreamError("dropping every feature leaves an empty instance")
            logger.info(
                "dropping %d of %d features at t=%d",
                len(dropped_ids),
                len(columns),
                instance.time_index,
            )
        yield instance.select(keep)


def scenario_length(spec: ScenarioSpec) -> int:
    """Number of instances the scenario produces."""
    schema = StreamSchema(delimiter=spec.delimiter, has_header=spec.has_header)
    total = 0
    for position, segment in enumerate(spec.segments):
        if segment.is_synthetic:
            if not segment.length:
                raise StreamError(
                    f"segment {position}: synthetic segments need length > 0"
                )
            total += segment.length
            continue
        available = max(count_rows(segment.source, schema) - segment.start, 0)
        total += available if segment.length is None else min(segment.length, available)
    return total


def build_stream(
    spec: ScenarioSpec, class_space: ClassSpace | None = None
) -> Iterator[Instance]:
    """Realise any scenario: segments in order, time indices 0..L-1, optional drop.

    Recorded segments are read lazily. All randomness comes from ``spec.seed``.
    """
    space = class_space if class_space is not None else ClassSpace()
    if spec.drop_at is not None:
        length = scenario_length(spec)
        if spec.drop_at >= length:
            raise StreamError(
                f"drop_at={spec.drop_at} lies beyond the stream length {length}"
            )
    return _drop_if_needed(_concatenate(spec, space), spec)


def _concatenate(spec: ScenarioSpec, space: ClassSpace) -> Iterator[Instance]:
    schema = StreamSchema(delimiter=spec.delimiter, has_header=spec.has_header)
    rng = np.random.default_rng(spec.seed)
    next_index = 0
    dimension: int | None = None
    for position, segment in enumerate(spec.segments):
        if segment.is_synthetic:
            part = draw_segment(rng, spec.synthetic, segment, position, 0, space)
        else:
            part = read_recorded_stream(
                segment.source, schema, space, start=segment.start, length=segment.length
            )
        for instance in part:
            if dimension is None:
                dimension = instance.dimension
            elif instance.dimension != dimension:
                raise StreamError(
                    f"segment {position} has {instance.dimension} features, "
                    f"earlier segments have {dimension}"
                )
            yield instance.with_time_index(next_index)
            next_index += 1


def _drop_if_needed(stream: Iterator[Instance], spec: ScenarioSpec) -> Iterator[Instance]:
    if spec.drop_at is None:
        return stream
    return apply_feature_drop(stream, spec.drop_at, spec.dropped_feature_indices or [])
