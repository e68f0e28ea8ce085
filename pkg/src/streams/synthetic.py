# SPDX-License-Identifier: Apache 2.0
# Copyright (c) 2025 IBM

"""Seeded class-conditional Gaussian streams with abrupt concept changes."""

from __future__ import annotations

import logging
from typing import TYPE_CHECKING

import numpy as np

from .instances import ClassSpace, Instance, StreamError
from .scenarios import ScenarioKind, ScenarioSpec, Segment, SyntheticParams

if TYPE_CHECKING:
    from collections.abc import Iterator

logger = logging.getLogger(__name__)


def class_means(params: SyntheticParams) -> np.ndarray:
    """Mean of every distribution, shape (n_classes, n_features)."""
    if params.means is not None:
        return np.asarray(params.means, dtype=np.float64)
    k, m = params.n_classes, params.n_features
    lattice = (np.arange(k)[:, None] + np.arange(m)[None, :]) % k
    return params.separation * lattice.astype(np.float64)


def segment_mapping(params: SyntheticParams, segment: Segment, position: int) -> np.ndarray:
    """Distribution index used for each label inside one segment."""
    k = params.n_classes
    if segment.mapping is None:
        return (np.arange(k) + position) % k
    mapping = np.asarray(segment.mapping, dtype=np.int64)
    if mapping.shape != (k,) or mapping.min() < 0 or mapping.max() >= k:
        raise StreamError(
            f"segment {position}: mapping must list {k} distribution indices in [0, {k})"
        )
    return mapping


def synthetic_class_space(params: SyntheticParams) -> ClassSpace:
    return ClassSpace([str(c) for c in range(params.n_classes)])


def draw_segment(
    rng: np.random.Generator,
    params: SyntheticParams,
    segment: Segment,
    position: int,
    first_time_index: int,
    class_space: ClassSpace,
) -> Iterator[Instance]:
    """Instances of one synthetic segment, numbered from ``first_time_index``."""
    if not segment.length:
        raise StreamError(f"segment {position}: synthetic segments need length > 0")
    ids = np.array([class_space.intern(str(c)) for c in range(params.n_classes)])
    mapping = segment_mapping(params, segment, position)
    means = class_means(params)

    labels = rng.choice(params.n_classes, size=segment.length, p=params.prior)
    if params.label_persistence > 0:
        stay = rng.random(segment.length) < params.label_persistence
        for i in range(1, segment.length):
            if stay[i]:
                labels[i] = labels[i - 1]
    noise = rng.standard_normal((segment.length, params.n_features))
    features = means[mapping[labels]] + params.std * noise
    for offset in range(segment.length):
        yield Instance(
            first_time_index + offset, features[offset], int(ids[labels[offset]])
        )


def synth_gaussian_stream(
    spec: ScenarioSpec, class_space: ClassSpace | None = None
) -> Iterator[Instance]:
    """Realise a synthetic-gaussian scenario.

    The sequence depends only on ``spec`` (``seed`` included). Labels are the
    class numbers as strings, interned in numeric order.
    """
    if spec.kind is not ScenarioKind.SYNTHETIC_GAUSSIAN:
        raise ValueError(f"expected a synthetic-gaussian scenario, got {spec.kind.value}")
    space = class_space if class_space is not None else synthetic_class_space(spec.synthetic)
    for position, segment in enumerate(spec.segments):
        if not segment.length:
            raise StreamError(f"segment {position}: synthetic segments need length > 0")

    rng = np.random.default_rng(spec.seed)
    next_index = 0
    for position, segment in enumerate(spec.segments):
        logger.debug(
            "synthetic segment %d: %d instances from t=%d", position, segment.length, next_index
        )
        yield from draw_segment(rng, spec.synthetic, segment, position, next_index, space)
        next_index += segment.length
