# SPDX-License-Identifier: Apache 2.0
# Copyright (c) 2025 IBM

from .drift_wrapper import DdmWrapped, wrap_with_ddm
from .gaussian_stats import GaussianLeafStats, SplitCandidate, entropy
from .hoeffding_adaptive_tree import (
    AdaLeaf,
    AdaSplit,
    HatConfig,
    HoeffdingAdaptiveTree,
    adaptive_size_bytes,
    hat_learn_one,
)
from .hoeffding_tree import (
    HoeffdingBoundParams,
    HoeffdingTree,
    LeafNode,
    LeafPrediction,
    SplitNode,
    TreeConfig,
    attempt_split,
    count_nodes,
    hoeffding_bound,
    ht_learn_one,
    split_decision,
    tree_size_bytes,
)
from .learner_base import FALLBACK_LABEL, DimensionMismatchError, IncrementalClassifier
from .majority import MajorityClassifier

__all__ = [
    "AdaLeaf",
    "AdaSplit",
    "DdmWrapped",
    "DimensionMismatchError",
    "FALLBACK_LABEL",
    "GaussianLeafStats",
    "HatConfig",
    "HoeffdingAdaptiveTree",
    "HoeffdingBoundParams",
    "HoeffdingTree",
    "IncrementalClassifier",
    "LeafNode",
    "LeafPrediction",
    "MajorityClassifier",
    "SplitCandidate",
    "SplitNode",
    "TreeConfig",
    "adaptive_size_bytes",
    "attempt_split",
    "count_nodes",
    "entropy",
    "hat_learn_one",
    "hoeffding_bound",
    "ht_learn_one",
    "split_decision",
    "tree_size_bytes",
    "wrap_with_ddm",
]
