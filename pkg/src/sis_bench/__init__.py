# SPDX-License-Identifier: Apache 2.0
# Copyright (c) 2025 IBM

"""Benchmark orchestration: learners by name, scenarios, runs and batteries."""

from .config import RunConfig, default_output_dir, load_env_file
from .learner_factory import (
    available_learners,
    create_learner,
    default_learner_name,
    parse_learner_name,
    register_learner,
)
from .runner import RunOutcome, aggregate, battery_rows, execute, run, run_battery
from .scenario_catalog import ScenarioName, ScenarioParams, make_scenario, scenario_variants

__all__ = [
    "RunConfig",
    "RunOutcome",
    "ScenarioName",
    "ScenarioParams",
    "aggregate",
    "available_learners",
    "battery_rows",
    "create_learner",
    "default_learner_name",
    "default_output_dir",
    "execute",
    "load_env_file",
    "make_scenario",
    "parse_learner_name",
    "register_learner",
    "run",
    "run_battery",
    "scenario_variants",
]
