# SPDX-License-Identifier: Apache 2.0
# Copyright (c) 2025 IBM

"""Registry of named learners.

A learner name is a registered base learner, optionally followed by a
modifier: ``hat``, ``ht+ddm``, ``hat+sis``, ...
"""

from __future__ import annotations

import os
from collections.abc import Callable

from src.learners.drift_wrapper import wrap_with_ddm
from src.learners.hoeffding_adaptive_tree import HatConfig, HoeffdingAdaptiveTree
from src.learners.hoeffding_tree import HoeffdingTree, TreeConfig
from src.learners.learner_base import IncrementalClassifier
from src.learners.majority import MajorityClassifier
from src.selection.sis import SisConfig, SisLearner

DEFAULT_LEARNER = "hat+sis"
MODIFIERS = ("sis", "ddm")

# Base learner builders take the tree settings. New learners register
# themselves here through register_learner.
_LEARNERS: dict[str, Callable[[HatConfig], IncrementalClassifier]] = {}


def register_learner(name: str, builder: Callable[[HatConfig], IncrementalClassifier]) -> None:
    if "+" in name:
        raise ValueError(f"base learner names cannot contain '+': {name}")
    _LEARNERS[name.lower()] = builder


def default_learner_name() -> str:
    return os.getenv("SIS_LEARNER", DEFAULT_LEARNER)


def available_learners() -> list[str]:
    names = sorted(_LEARNERS)
    return names + [f"{base}+{modifier}" for base in names for modifier in MODIFIERS]


def parse_learner_name(name: str) -> tuple[str, str | None]:
    """Split ``name`` into (base, modifier); raise ValueError for unknown parts."""
    base, _, modifier = name.lower().partition("+")
    if base not in _LEARNERS:
        raise ValueError(
            f"Unsupported learner type: {name} (choose from {', '.join(available_learners())})"
        )
    if modifier and modifier not in MODIFIERS:
        raise ValueError(f"Unsupported learner modifier '{modifier}' in {name}")
    return base, modifier or None


def create_learner(
    name: str | None = None,
    tree: HatConfig | None = None,
    sis: SisConfig | None = None,
) -> IncrementalClassifier:
    """
    Factory function to create learners by name.

    Args:
        name: learner name; SIS_LEARNER or hat+sis when omitted
        tree: tree hyperparameters shared by ht and hat
        sis: instance selection settings for +sis learners

    Returns:
        A fresh, untrained learner
    """
    if name is None:
        name = default_learner_name()
    base, modifier = parse_learner_name(name)
    learner = _LEARNERS[base](tree or HatConfig())
    if modifier == "sis":
        return SisLearner(learner, sis)
    if modifier == "ddm":
        return wrap_with_ddm(learner)
    return learner


def _tree_settings(config: HatConfig) -> TreeConfig:
    return TreeConfig.model_validate(config.model_dump(include=set(TreeConfig.model_fields)))


register_learner("hat", HoeffdingAdaptiveTree)
register_learner("ht", lambda config: HoeffdingTree(_tree_settings(config)))
register_learner("majority", lambda _config: MajorityClassifier())
