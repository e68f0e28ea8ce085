# SPDX-License-Identifier: Apache 2.0
# Copyright (c) 2025 IBM

"""Stream sources: instances, recorded files, synthetic drift and scenarios."""

from .assembly import apply_feature_drop, build_stream, scenario_length
from .instances import (
    ClassSpace,
    DimensionMismatchError,
    EmptyStreamError,
    Instance,
    StreamError,
    StreamFormatError,
    UnlabeledInstanceError,
    surviving_positions,
)
from .recorded import StreamSchema, count_rows, read_recorded_stream
from .scenarios import (
    SYNTHETIC_SOURCE,
    ScenarioKind,
    ScenarioSpec,
    Segment,
    SyntheticParams,
    load_scenario_spec,
)
from .synthetic import class_means, synth_gaussian_stream, synthetic_class_space

__all__ = [
    "ClassSpace",
    "DimensionMismatchError",
    "EmptyStreamError",
    "Instance",
    "SYNTHETIC_SOURCE",
    "ScenarioKind",
    "ScenarioSpec",
    "Segment",
    "StreamError",
    "StreamFormatError",
    "StreamSchema",
    "SyntheticParams",
    "UnlabeledInstanceError",
    "apply_feature_drop",
    "build_stream",
    "class_means",
    "count_rows",
    "load_scenario_spec",
    "read_recorded_stream",
    "scenario_length",
    "surviving_positions",
    "synth_gaussian_stream",
    "synthetic_class_space",
]
