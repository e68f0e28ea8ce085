# SPDX-License-Identifier: Apache 2.0
# Copyright (c) 2025 IBM

"""Run configuration and environment defaults."""

from __future__ import annotations

import logging
import os
from pathlib import Path

from pydantic import BaseModel, Field, field_validator, model_validator

from src.learners.hoeffding_adaptive_tree import HatConfig
from src.selection.sis import SisConfig
from src.streams.scenarios import ScenarioSpec

from .learner_factory import default_learner_name, parse_learner_name

logger = logging.getLogger(__name__)

DEFAULT_OUTPUT_DIR = "results"


def load_env_file(path: str | Path | None = None) -> None:
    """Load KEY=VALUE lines from a .env file without overriding the environment."""
    env_file = Path(path) if path is not None else Path.cwd() / ".env"
    if not env_file.exists():
        return
    with open(env_file) as f:
        for line in f:
            line = line.strip()
            if line and not line.startswith("#") and "=" in line:
                key, value = line.split("=", 1)
                os.environ.setdefault(key.strip(), value.strip())
    logger.debug("loaded environment from %s", env_file)


def default_output_dir() -> Path:
    return Path(os.getenv("SIS_OUTPUT_DIR", DEFAULT_OUTPUT_DIR))


class RunConfig(BaseModel):
    learner: str = Field(
        default_factory=default_learner_name,
        description="Learner name: base (hat, ht, majority) optionally followed by +sis or +ddm",
    )
    scenario: ScenarioSpec = Field(..., description="Where the instances come from")
    scenario_name: str | None = Field(default=None, description="Name used in reports")
    sis: SisConfig = Field(default_factory=SisConfig, description="Instance selection settings")
    tree: HatConfig = Field(default_factory=HatConfig, description="Tree settings")
    metrics_window: int = Field(default=20, ge=1, description="Windowed accuracy length")
    output_dir: Path = Field(
        default_factory=default_output_dir, description="Directory receiving the report files"
    )
    seed: int | None = Field(
        default=None, description="Overrides the scenario seed when given"
    )
    force: bool = Field(default=False, description="Overwrite existing report files")

    @field_validator("learner")
    @classmethod
    def _known_learner(cls, value: str) -> str:
        parse_learner_name(value)
        return value.lower()

    @model_validator(mode="after")
    def _apply_seed(self) -> RunConfig:
        if self.seed is not None and self.scenario.seed != self.seed:
            self.scenario = self.scenario.model_copy(update={"seed": self.seed})
        return self

    @property
    def sis_enabled(self) -> bool:
        return parse_learner_name(self.learner)[1] == "sis"

    @property
    def display_name(self) -> str:
        if self.scenario_name:
            return self.scenario_name
        return "+".join(Path(s.source).name for s in self.scenario.segments)
