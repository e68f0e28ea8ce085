# SPDX-License-Identifier: Apache 2.0
# Copyright (c) 2025 IBM

"""The four benchmark scenarios, built from user-supplied segments.

I    replay of one recorded set
II   fault, normal and load-shifted fault segments in sequence
III  one set whose feature columns partly disappear mid-stream
IV   two event types with overlapping class-conditional distributions,
     concatenated in both orders
"""

from __future__ import annotations

from collections.abc import Sequence
from enum import Enum

from pydantic import BaseModel, Field

from src.streams.scenarios import ScenarioKind, ScenarioSpec, Segment, SyntheticParams


class ScenarioName(str, Enum):
    I = "I"
    II = "II"
    III = "III"
    IV = "IV"


class ScenarioParams(BaseModel):
    drop_at: int = Field(default=500, ge=0, description="Scenario III: instance of the drop")
    dropped_feature_indices: list[int] = Field(
        default_factory=lambda: [0], description="Scenario III: columns that disappear"
    )
    seed: int = Field(default=0, description="Seed for synthetic segments")
    synthetic: SyntheticParams = Field(default_factory=SyntheticParams)
    delimiter: str = Field(default=",", description="Recorded-file delimiter")
    has_header: bool = Field(default=False, description="Recorded files have a header")


_REQUIRED_SOURCES = {
    ScenarioName.I: (1, "the recorded set"),
    ScenarioName.II: (3, "fault, normal and shifted-load fault segments"),
    ScenarioName.III: (1, "the recorded set"),
    ScenarioName.IV: (2, "the first and second event segments"),
}

_KINDS = {
    ScenarioName.I: ScenarioKind.REPLAY,
    ScenarioName.II: ScenarioKind.ABRUPT_CONCAT,
    ScenarioName.III: ScenarioKind.FEATURE_DROP,
    ScenarioName.IV: ScenarioKind.OVERLAP_SWAP,
}


def make_scenario(
    name: ScenarioName | str,
    sources: Sequence[Segment | str],
    params: ScenarioParams | None = None,
) -> ScenarioSpec:
    """
    Build one scenario from its segments.

    Args:
        name: I, II, III or IV
        sources: segments in stream order; a bare string is a whole file
            (or the synthetic source)
        params: drop settings, seed and file format

    Raises:
        ValueError: unknown scenario or wrong number of sources
    """
    scenario = ScenarioName(name)
    params = params or ScenarioParams()
    segments = [s if isinstance(s, Segment) else Segment(source=s) for s in sources]
    count, what = _REQUIRED_SOURCES[scenario]
    if len(segments) != count:
        raise ValueError(
            f"scenario {scenario.value} needs {count} segment source(s) ({what}), "
            f"got {len(segments)}"
        )
    drop = scenario is ScenarioName.III
    return ScenarioSpec(
        kind=_KINDS[scenario],
        segments=segments,
        drop_at=params.drop_at if drop else None,
        dropped_feature_indices=list(params.dropped_feature_indices) if drop else None,
        seed=params.seed,
        synthetic=params.synthetic,
        delimiter=params.delimiter,
        has_header=params.has_header,
    )


def scenario_variants(
    name: ScenarioName | str,
    sources: Sequence[Segment | str],
    params: ScenarioParams | None = None,
) -> list[ScenarioSpec]:
    """Every stream a scenario stands for: both segment orders for IV, else one."""
    scenario = ScenarioName(name)
    specs = [make_scenario(scenario, sources, params)]
    if scenario is ScenarioName.IV:
        specs.append(make_scenario(scenario, list(reversed(sources)), params))
    return specs
