# SPDX-License-Identifier: Apache 2.0
# Copyright (c) 2025 IBM

"""Hoeffding adaptive tree: a Hoeffding tree whose nodes monitor their own
error with ADWIN and grow alternate subtrees when that error rises."""

from __future__ import annotations

import logging
from collections.abc import Callable
from functools import partial

import numpy as np
from pydantic import Field

from src.drift.adwin import Adwin
from src.streams.instances import Instance

from .hoeffding_tree import (
    SPLIT_NODE_BYTES,
    HoeffdingTree,
    LeafNode,
    SplitNode,
    TreeConfig,
    attempt_split,
)

logger = logging.getLogger(__name__)


class HatConfig(TreeConfig):
    adwin_delta: float = Field(
        default=0.002, gt=0.0, lt=1.0, description="Confidence of the node error monitors"
    )
    drift_window_threshold: int = Field(
        default=100,
        ge=1,
        description="Monitor width an alternate tree needs before it is compared with the main subtree",
    )


class AdaLeaf(LeafNode):
    def __init__(
        self,
        dimension: int,
        depth: int = 0,
        initial_counts: np.ndarray | None = None,
        adwin_delta: float = 0.002,
    ) -> None:
        super().__init__(dimension, depth, initial_counts)
        self.adwin = Adwin(delta=adwin_delta)


class AdaSplit(SplitNode):
    def __init__(
        self, feature: int, threshold: float, depth: int, adwin_delta: float = 0.002
    ) -> None:
        super().__init__(feature, threshold, depth)
        self.adwin = Adwin(delta=adwin_delta)
        self.alternate: AdaLeaf | AdaSplit | None = None


AdaNode = AdaLeaf | AdaSplit


class HoeffdingAdaptiveTree(HoeffdingTree):
    def __init__(self, config: HatConfig | None = None) -> None:
        super().__init__(config or HatConfig())
        self.n_alternates_created = 0
        self.n_replacements = 0
        self.n_prunes = 0

    @property
    def learner_type(self) -> str:
        return "hat"

    def reset(self) -> None:
        super().reset()
        self.n_alternates_created = 0
        self.n_replacements = 0
        self.n_prunes = 0

    def _new_leaf(self, dimension: int, depth: int = 0) -> AdaLeaf:
        return AdaLeaf(dimension, depth, adwin_delta=self.config.adwin_delta)

    def learn_one(self, x: Instance) -> None:
        self._check_dimension(x)
        label = self._require_label(x)
        if self.root is None:
            self.root = self._new_leaf(x.dimension)
        self._learn_node(self.root, x.features, label, self._set_root)

    def _set_root(self, node: AdaNode) -> None:
        self.root = node

    def _subtree_prediction(self, node: AdaNode, features: np.ndarray) -> int:
        while not node.is_leaf:
            node = node.children[node.branch(features)]
        return node.predict(features, self.config.leaf_prediction, self.default_label)

    def _learn_node(
        self,
        node: AdaNode,
        features: np.ndarray,
        label: int,
        replace: Callable[[AdaNode], None],
    ) -> None:
        error = float(self._subtree_prediction(node, features) != label)
        previous_error = node.adwin.estimation
        changed = node.adwin.update(error)

        if node.is_leaf:
            node.learn(features, label, self.default_label)
            split = attempt_split(
                node,
                self.config,
                make_leaf=partial(AdaLeaf, adwin_delta=self.config.adwin_delta),
                make_split=partial(AdaSplit, adwin_delta=self.config.adwin_delta),
            )
            if split is not None:
                self.n_splits += 1
                replace(split)
            return

        if changed and node.adwin.estimation > previous_error:
            if node.alternate is None:
                node.alternate = self._new_leaf(self.dimension, node.depth)
                self.n_alternates_created += 1
                logger.debug(
                    "alternate tree started at depth %d (error %.3f)",
                    node.depth,
                    node.adwin.estimation,
                )
        elif node.alternate is not None:
            threshold = self.config.drift_window_threshold
            alternate = node.alternate
            if alternate.adwin.width >= threshold:
                # ties keep the main subtree
                if alternate.adwin.estimation < node.adwin.estimation:
                    logger.info(
                        "alternate tree replaces subtree at depth %d (error %.3f < %.3f)",
                        node.depth,
                        alternate.adwin.estimation,
                        node.adwin.estimation,
                    )
                    self.n_replacements += 1
                    replace(alternate)
                    self._learn_node(alternate, features, label, replace)
                    return
                logger.debug("alternate tree pruned at depth %d", node.depth)
                self.n_prunes += 1
                node.alternate = None

        if node.alternate is not None:
            self._learn_node(node.alternate, features, label, partial(setattr, node, "alternate"))

        branch = node.branch(features)
        self._learn_node(
            node.children[branch], features, label, partial(node.children.__setitem__, branch)
        )

    def size_bytes(self) -> int:
        return adaptive_size_bytes(self.root)


def adaptive_size_bytes(node: AdaNode | None) -> int:
    """Main nodes, their monitors and any alternate subtrees."""
    if node is None:
        return 0
    if node.is_leaf:
        return node.size_bytes() + node.adwin.size_bytes()
    total = SPLIT_NODE_BYTES + node.adwin.size_bytes()
    total += sum(adaptive_size_bytes(child) for child in node.children)
    return total + adaptive_size_bytes(node.alternate)


def hat_learn_one(tree: HoeffdingAdaptiveTree, x: Instance) -> HoeffdingAdaptiveTree:
    tree.learn_one(x)
    return tree
