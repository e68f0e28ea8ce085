# SPDX-License-Identifier: Apache 2.0
# Copyright (c) 2025 IBM

"""Hoeffding tree for numeric features."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING

import numpy as np
from pydantic import BaseModel, Field

from src.streams.instances import Instance

from .gaussian_stats import GaussianLeafStats, SplitCandidate
from .learner_base import IncrementalClassifier

if TYPE_CHECKING:
    from collections.abc import Callable

logger = logging.getLogger(__name__)

# Size estimate: fixed bytes per split node, per leaf, and per leaf feature
# (five per-class estimator arrays of 8-byte floats for two classes).
SPLIT_NODE_BYTES = 64
LEAF_NODE_BYTES = 128
LEAF_FEATURE_BYTES = 80


class LeafPrediction(str, Enum):
    MAJORITY = "majority"
    NAIVE_BAYES_ADAPTIVE = "naive-bayes-adaptive"


class TreeConfig(BaseModel):
    grace_period: int = Field(
        default=200, ge=1, description="Instances a leaf sees between split attempts"
    )
    split_confidence: float = Field(
        default=1e-7, gt=0.0, lt=1.0, description="Hoeffding bound delta"
    )
    tie_threshold: float = Field(
        default=0.05, ge=0.0, description="Split anyway once the bound falls below this"
    )
    leaf_prediction: LeafPrediction = Field(
        default=LeafPrediction.NAIVE_BAYES_ADAPTIVE, description="Leaf prediction policy"
    )
    n_split_points: int = Field(
        default=10, ge=1, description="Candidate thresholds per feature"
    )


@dataclass(frozen=True)
class HoeffdingBoundParams:
    range_r: float
    delta: float
    n: int

    def __post_init__(self) -> None:
        if self.range_r <= 0:
            raise ValueError("range_r must be > 0")
        if not 0.0 < self.delta < 1.0:
            raise ValueError("delta must lie in (0, 1)")
        if self.n < 1:
            raise ValueError("n must be >= 1")


def hoeffding_bound(params: HoeffdingBoundParams) -> float:
    return params.range_r * math.sqrt(math.log(1.0 / params.delta) / (2.0 * params.n))


class LeafNode:
    def __init__(
        self, dimension: int, depth: int = 0, initial_counts: np.ndarray | None = None
    ) -> None:
        self.stats = GaussianLeafStats(dimension)
        self.depth = depth
        self.initial_counts = (
            np.zeros(0) if initial_counts is None else np.asarray(initial_counts, float)
        )
        self.weight_at_last_attempt = 0.0
        self.mc_correct = 0
        self.nb_correct = 0

    @property
    def is_leaf(self) -> bool:
        return True

    def class_counts(self) -> np.ndarray:
        observed = self.stats.counts
        size = max(observed.size, self.initial_counts.size)
        counts = np.zeros(size)
        counts[: observed.size] += observed
        counts[: self.initial_counts.size] += self.initial_counts
        return counts

    def majority(self, default: int) -> int:
        counts = self.class_counts()
        if not counts.size or counts.max() <= 0:
            return default
        return int(np.argmax(counts))

    def naive_bayes(self, features: np.ndarray, default: int) -> int:
        if self.stats.total == 0:
            return self.majority(default)
        return int(np.argmax(self.stats.log_joint(features)))

    def predict(self, features: np.ndarray, policy: LeafPrediction, default: int) -> int:
        if policy is LeafPrediction.MAJORITY or self.mc_correct > self.nb_correct:
            return self.majority(default)
        return self.naive_bayes(features, default)

    def learn(self, features: np.ndarray, label: int, default: int) -> None:
        if self.majority(default) == label:
            self.mc_correct += 1
        if self.naive_bayes(features, default) == label:
            self.nb_correct += 1
        self.stats.update(features, label)

    def size_bytes(self) -> int:
        return LEAF_NODE_BYTES + LEAF_FEATURE_BYTES * self.stats.dimension


class SplitNode:
    def __init__(self, feature: int, threshold: float, depth: int) -> None:
        self.feature = feature
        self.threshold = threshold
        self.depth = depth
        self.children: list = [None, None]

    @property
    def is_leaf(self) -> bool:
        return False

    def branch(self, features: np.ndarray) -> int:
        return 0 if features[self.feature] <= self.threshold else 1


class HoeffdingTree(IncrementalClassifier):
    """Incremental decision tree that splits once the Hoeffding bound separates
    the best candidate from the runner-up."""

    def __init__(self, config: TreeConfig | None = None) -> None:
        super().__init__()
        self.config = config or TreeConfig()
        self.root: LeafNode | SplitNode | None = None
        self.n_splits = 0

    @property
    def learner_type(self) -> str:
        return "ht"

    def reset(self) -> None:
        self.root = None
        self.n_splits = 0
        self._dimension = None

    def learn_one(self, x: Instance) -> None:
        self._check_dimension(x)
        label = self._require_label(x)
        if self.root is None:
            self.root = LeafNode(x.dimension)
        leaf, parent, branch = self._route(x.features)
        leaf.learn(x.features, label, self.default_label)
        self._maybe_split(leaf, parent, branch)

    def predict_one(self, x: Instance) -> int:
        self._check_dimension(x)
        if self.root is None:
            return self.default_label
        leaf, _, _ = self._route(x.features)
        return leaf.predict(x.features, self.config.leaf_prediction, self.default_label)

    def _route(
        self, features: np.ndarray
    ) -> tuple[LeafNode, SplitNode | None, int]:
        node, parent, branch = self.root, None, 0
        while not node.is_leaf:
            parent, branch = node, node.branch(features)
            node = node.children[branch]
        return node, parent, branch

    def _maybe_split(self, leaf: LeafNode, parent: SplitNode | None, branch: int) -> None:
        new_node = attempt_split(leaf, self.config)
        if new_node is None:
            return
        self.n_splits += 1
        if parent is None:
            self.root = new_node
        else:
            parent.children[branch] = new_node

    def size_bytes(self) -> int:
        return tree_size_bytes(self.root)

    def count_nodes(self) -> tuple[int, int]:
        """(split nodes, leaves)."""
        return count_nodes(self.root)


def split_decision(
    candidates: list[SplitCandidate], n_classes: int, n: float, config: TreeConfig
) -> SplitCandidate | None:
    """The candidate to split on, or None.

    The null split (no split at all) competes with merit 0.
    """
    if not candidates:
        return None
    ranked = sorted(candidates, key=lambda c: c.merit, reverse=True)
    best = ranked[0]
    second_merit = max(ranked[1].merit if len(ranked) > 1 else 0.0, 0.0)
    if best.merit <= 0:
        return None
    bound = hoeffding_bound(
        HoeffdingBoundParams(
            range_r=math.log2(max(n_classes, 2)),
            delta=config.split_confidence,
            n=max(int(n), 1),
        )
    )
    if best.merit - second_merit > bound or bound < config.tie_threshold:
        return best
    return None


def attempt_split(
    leaf: LeafNode,
    config: TreeConfig,
    make_leaf: Callable[..., LeafNode] = LeafNode,
    make_split: Callable[..., SplitNode] = SplitNode,
) -> SplitNode | None:
    """Split ``leaf`` when a grace period has elapsed and the bound allows it."""
    weight = leaf.stats.total
    if weight - leaf.weight_at_last_attempt < config.grace_period:
        return None
    leaf.weight_at_last_attempt = weight
    if leaf.stats.observed_classes() < 2:
        return None
    candidates = leaf.stats.best_splits(config.n_split_points)
    chosen = split_decision(candidates, leaf.stats.observed_classes(), weight, config)
    if chosen is None:
        return None
    node = make_split(chosen.feature, chosen.threshold, leaf.depth)
    dimension = leaf.stats.dimension
    node.children = [
        make_leaf(dimension, leaf.depth + 1, chosen.left_counts),
        make_leaf(dimension, leaf.depth + 1, chosen.right_counts),
    ]
    logger.debug(
        "split at depth %d on feature %d <= %.4f (merit %.4f, %d instances)",
        leaf.depth,
        chosen.feature,
        chosen.threshold,
        chosen.merit,
        int(weight),
    )
    return node


def count_nodes(node: LeafNode | SplitNode | None) -> tuple[int, int]:
    if node is None:
        return 0, 0
    if node.is_leaf:
        return 0, 1
    splits, leaves = 1, 0
    for child in node.children:
        s, leaf_count = count_nodes(child)
        splits += s
        leaves += leaf_count
    return splits, leaves


def tree_size_bytes(node: LeafNode | SplitNode | None) -> int:
    if node is None:
        return 0
    if node.is_leaf:
        return node.size_bytes()
    return SPLIT_NODE_BYTES + sum(tree_size_bytes(child) for child in node.children)


def ht_learn_one(tree: HoeffdingTree, x: Instance) -> HoeffdingTree:
    tree.learn_one(x)
    return tree
