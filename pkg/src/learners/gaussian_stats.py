# SPDX-License-Identifier: Apache 2.0
# Copyright (c) 2025 IBM

"""Per-class, per-feature Gaussian estimators kept at tree leaves."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import ndtr

# variance floor for naive Bayes densities on features scaled to unit variance
MIN_VARIANCE = 1e-2
# each branch of a split must carry at least this share of the leaf's weight
MIN_BRANCH_FRACTION = 0.01


def entropy(counts: np.ndarray, axis: int = 0) -> np.ndarray:
    """Base-2 entropy of class counts along ``axis``."""
    totals = counts.sum(axis=axis, keepdims=True)
    with np.errstate(divide="ignore", invalid="ignore"):
        p = np.where(totals > 0, counts / totals, 0.0)
        terms = np.where(p > 0, -p * np.log2(p), 0.0)
    return terms.sum(axis=axis)


@dataclass
class SplitCandidate:
    feature: int
    threshold: float
    merit: float
    left_counts: np.ndarray
    right_counts: np.ndarray


class GaussianLeafStats:
    """Running mean, variance and range of every feature for every class."""

    def __init__(self, dimension: int) -> None:
        self.dimension = dimension
        self.counts = np.zeros(0)
        self.means = np.zeros((0, dimension))
        self.m2 = np.zeros((0, dimension))
        self.mins = np.zeros((0, dimension))
        self.maxs = np.zeros((0, dimension))

    @property
    def n_classes(self) -> int:
        return int(self.counts.size)

    @property
    def total(self) -> float:
        return float(self.counts.sum())

    def _grow(self, n_classes: int) -> None:
        extra = n_classes - self.counts.size
        if extra <= 0:
            return
        m = self.dimension
        self.counts = np.concatenate([self.counts, np.zeros(extra)])
        self.means = np.vstack([self.means, np.zeros((extra, m))])
        self.m2 = np.vstack([self.m2, np.zeros((extra, m))])
        self.mins = np.vstack([self.mins, np.full((extra, m), np.inf)])
        self.maxs = np.vstack([self.maxs, np.full((extra, m), -np.inf)])

    def update(self, features: np.ndarray, label: int) -> None:
        self._grow(label + 1)
        self.counts[label] += 1
        n = self.counts[label]
        delta = features - self.means[label]
        self.means[label] += delta / n
        self.m2[label] += delta * (features - self.means[label])
        np.minimum(self.mins[label], features, out=self.mins[label])
        np.maximum(self.maxs[label], features, out=self.maxs[label])

    def variances(self) -> np.ndarray:
        """Sample variance per class and feature; 0 below two observations."""
        denominators = np.maximum(self.counts - 1, 1)[:, None]
        var = self.m2 / denominators
        var[self.counts < 2] = 0.0
        return np.maximum(var, 0.0)

    def observed_classes(self) -> int:
        return int(np.count_nonzero(self.counts))

    def log_joint(self, features: np.ndarray) -> np.ndarray:
        """log P(c) + sum_j log N(x_j | c) for every class; -inf for unseen classes."""
        seen = self.counts > 0
        scores = np.full(self.n_classes, -np.inf)
        if not seen.any():
            return scores
        var = np.maximum(self.variances()[seen], MIN_VARIANCE)
        means = self.means[seen]
        log_density = -0.5 * (np.log(2 * np.pi * var) + (features - means) ** 2 / var)
        prior = np.log(self.counts[seen] / self.counts.sum())
        scores[seen] = prior + log_density.sum(axis=1)
        return scores

    def best_splits(self, n_points: int) -> list[SplitCandidate]:
        """Best threshold split of every feature by information gain.

        Thresholds are ``n_points`` equally spaced values strictly inside the
        observed range; class weights on each side come from the Gaussian CDF.
        """
        seen = self.counts > 0
        if seen.sum() < 2:
            return []
        counts = self.counts[seen]
        means = self.means[seen]
        stds = np.sqrt(self.variances()[seen])
        lows = self.mins[seen].min(axis=0)
        highs = self.maxs[seen].max(axis=0)
        total = counts.sum()
        parent_entropy = float(entropy(counts))

        # thresholds: (m, T)
        fractions = np.arange(1, n_points + 1) / (n_points + 1)
        thresholds = lows[:, None] + (highs - lows)[:, None] * fractions[None, :]

        # left weights per class: (C, m, T)
        spread = stds[:, :, None]
        centred = thresholds[None, :, :] - means[:, :, None]
        with np.errstate(divide="ignore", invalid="ignore"):
            z = np.where(spread > 0, centred / np.where(spread > 0, spread, 1.0), 0.0)
        cdf = np.where(spread > 0, ndtr(z), (centred >= 0).astype(float))
        left = counts[:, None, None] * cdf
        right = counts[:, None, None] - left

        left_total = left.sum(axis=0)
        right_total = right.sum(axis=0)
        children = (left_total * entropy(left) + right_total * entropy(right)) / total
        merit = parent_entropy - children
        balanced = np.minimum(left_total, right_total) >= MIN_BRANCH_FRACTION * total
        merit = np.where(balanced, merit, -np.inf)
        merit[highs <= lows, :] = -np.inf

        candidates = []
        full_left = np.zeros((self.n_classes,) + left.shape[1:])
        full_left[seen] = left
        for j in range(self.dimension):
            best_t = int(np.argmax(merit[j]))
            if not np.isfinite(merit[j, best_t]):
                continue
            left_counts = full_left[:, j, best_t]
            candidates.append(
                SplitCandidate(
                    feature=j,
                    threshold=float(thresholds[j, best_t]),
                    merit=float(merit[j, best_t]),
                    left_counts=left_counts,
                    right_counts=self.counts - left_counts,
                )
            )
        return candidates
