# SPDX-License-Identifier: Apache 2.0
# Copyright (c) 2025 IBM

"""Scenario descriptions and their YAML loader."""

from __future__ import annotations

import json
import logging
from enum import Enum
from pathlib import Path
from typing import Any

import yaml
from jsonschema import ValidationError as SchemaValidationError
from jsonschema import validate
from pydantic import BaseModel, Field, model_validator

logger = logging.getLogger(__name__)

SYNTHETIC_SOURCE = "synthetic:gaussian"
SCENARIO_API_VERSION = "sis/v1alpha1"
SCENARIO_SCHEMA_PATH = (
    Path(__file__).resolve().parents[2] / "schemas" / "scenario-schema.json"
)


class ScenarioKind(str, Enum):
    REPLAY = "replay"
    ABRUPT_CONCAT = "abrupt-concat"
    FEATURE_DROP = "feature-drop"
    OVERLAP_SWAP = "overlap-swap"
    SYNTHETIC_GAUSSIAN = "synthetic-gaussian"


class SyntheticParams(BaseModel):
    """Class-conditional Gaussians used for ``synthetic:gaussian`` segments.

    Distribution ``d`` has mean ``separation * ((d + j) % n_classes)`` on
    feature ``j`` unless ``means`` overrides it, and isotropic spread ``std``.

    Instance selection judges each candidate window by how well it predicts
    the most recent labels, so it relies on neighbouring instances sharing a
    label. With ``label_persistence`` 0 labels are drawn independently and a
    +sis learner has nothing to follow; the command line defaults to 0.9.
    """

    n_classes: int = Field(default=2, ge=2, description="Number of classes")
    n_features: int = Field(default=4, ge=1, description="Feature dimension m")
    separation: float = Field(
        default=3.0, gt=0, description="Spacing between neighbouring class means"
    )
    std: float = Field(default=1.0, gt=0, description="Per-feature standard deviation")
    label_persistence: float = Field(
        default=0.0,
        ge=0.0,
        lt=1.0,
        description="Probability that an instance repeats the previous label",
    )
    prior: list[float] | None = Field(
        default=None, description="Class prior; uniform when omitted"
    )
    means: list[list[float]] | None = Field(
        default=None,
        description="Explicit per-distribution means (n_classes x n_features)",
    )

    @model_validator(mode="after")
    def _check_shapes(self) -> SyntheticParams:
        if self.prior is not None:
            if len(self.prior) != self.n_classes:
                raise ValueError(
                    f"prior has {len(self.prior)} entries for {self.n_classes} classes"
                )
            if any(p < 0 for p in self.prior) or abs(sum(self.prior) - 1.0) > 1e-9:
                raise ValueError("prior must be non-negative and sum to 1")
        if self.means is not None:
            if len(self.means) != self.n_classes or any(
                len(row) != self.n_features for row in self.means
            ):
                raise ValueError(
                    f"means must be {self.n_classes} x {self.n_features}"
                )
        return self


class Segment(BaseModel):
    source: str = Field(
        ..., description=f"Recorded file path or '{SYNTHETIC_SOURCE}'"
    )
    start: int = Field(default=0, ge=0, description="First data row of the segment")
    length: int | None = Field(
        default=None,
        ge=0,
        description="Number of instances; recorded segments run to the end when omitted",
    )
    mapping: list[int] | None = Field(
        default=None,
        description=(
            "Synthetic only: distribution index drawn for each label. "
            "Defaults to a rotation by the segment position"
        ),
    )

    @property
    def is_synthetic(self) -> bool:
        return self.source == SYNTHETIC_SOURCE


class ScenarioSpec(BaseModel):
    kind: ScenarioKind = Field(..., description="Scenario family")
    segments: list[Segment] = Field(
        ..., min_length=1, description="Segments concatenated in order"
    )
    drop_at: int | None = Field(
        default=None, ge=0, description="Time index at which features disappear"
    )
    dropped_feature_indices: list[int] | None = Field(
        default=None, description="Original column ids removed at drop_at"
    )
    seed: int = Field(default=0, description="Seed for every random draw")
    synthetic: SyntheticParams = Field(
        default_factory=SyntheticParams, description="Synthetic segment generator"
    )
    delimiter: str = Field(default=",", description="Recorded-file delimiter")
    has_header: bool = Field(default=False, description="Recorded files have a header")

    @model_validator(mode="after")
    def _check_drop(self) -> ScenarioSpec:
        has_at = self.drop_at is not None
        has_ids = self.dropped_feature_indices is not None
        if has_at != has_ids:
            raise ValueError(
                "drop_at and dropped_feature_indices must be given together"
            )
        if self.kind is ScenarioKind.FEATURE_DROP and not has_at:
            raise ValueError("feature-drop scenarios need drop_at")
        if has_ids and any(i < 0 for i in self.dropped_feature_indices):
            raise ValueError("dropped feature indices must be >= 0")
        if self.kind is ScenarioKind.SYNTHETIC_GAUSSIAN and not all(
            s.is_synthetic for s in self.segments
        ):
            raise ValueError("synthetic-gaussian scenarios take synthetic segments only")
        return self


def _load_schema() -> dict[str, Any]:
    with open(SCENARIO_SCHEMA_PATH) as f:
        return json.load(f)


def load_scenario_spec(path: str | Path) -> ScenarioSpec:
    """Read a ``kind: Scenario`` YAML document into a ScenarioSpec.

    Relative segment sources are resolved against the YAML file's directory.
    """
    source = Path(path)
    with open(source) as f:
        document = yaml.safe_load(f)
    try:
        validate(instance=document, schema=_load_schema())
    except SchemaValidationError as e:
        raise ValueError(f"invalid scenario file {source}: {e.message}") from e

    body = dict(document["spec"])
    for segment in body["segments"]:
        if segment["source"] != SYNTHETIC_SOURCE:
            segment_path = Path(segment["source"])
            if not segment_path.is_absolute():
                segment["source"] = str(source.parent / segment_path)
    spec = ScenarioSpec.model_validate(body)
    logger.debug(
        "loaded scenario %s (%s, %d segments)",
        document["metadata"]["name"],
        spec.kind.value,
        len(spec.segments),
    )
    return spec
