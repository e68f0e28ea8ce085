import os
import sys

# Ensure the project root is on sys.path so tests can import `src.*`
sys.path.append(
    os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
)

import numpy as np
import pytest
from scipy.stats import norm

from src.learners import GaussianLeafStats, entropy


@pytest.mark.unit
class TestEntropy:
    def test_known_values(self) -> None:
        assert float(entropy(np.array([1.0, 1.0]))) == pytest.approx(1.0)
        assert float(entropy(np.array([4.0, 0.0]))) == 0.0
        assert float(entropy(np.array([1.0, 1.0, 1.0, 1.0]))) == pytest.approx(2.0)

    def test_empty_counts(self) -> None:
        assert float(entropy(np.zeros(3))) == 0.0


@pytest.mark.unit
class TestGaussianLeafStats:
    def fill(self, seed: int = 0) -> tuple[GaussianLeafStats, np.ndarray, np.ndarray]:
        rng = np.random.default_rng(seed)
        features = rng.normal(size=(400, 3)) * [1.0, 2.0, 0.5] + [0.0, 1.0, -1.0]
        labels = rng.integers(0, 3, 400)
        stats = GaussianLeafStats(3)
        for row, label in zip(features, labels):
            stats.update(row, int(label))
        return stats, features, labels

    def test_moments_match_numpy(self) -> None:
        stats, features, labels = self.fill()
        for c in range(3):
            rows = features[labels == c]
            assert stats.counts[c] == len(rows)
            np.testing.assert_allclose(stats.means[c], rows.mean(axis=0), atol=1e-10)
            np.testing.assert_allclose(stats.variances()[c], rows.var(axis=0, ddof=1), atol=1e-10)
            np.testing.assert_array_equal(stats.mins[c], rows.min(axis=0))
            np.testing.assert_array_equal(stats.maxs[c], rows.max(axis=0))

    def test_classes_grow_on_demand(self) -> None:
        stats = GaussianLeafStats(2)
        stats.update(np.array([1.0, 2.0]), 3)
        assert stats.n_classes == 4
        assert stats.observed_classes() == 1
        assert stats.total == 1.0
        assert stats.variances()[3].tolist() == [0.0, 0.0]

    def test_log_joint_matches_scipy(self) -> None:
        stats, features, labels = self.fill(seed=1)
        point = np.array([0.3, -0.2, 0.1])
        scores = stats.log_joint(point)
        for c in range(3):
            rows = features[labels == c]
            prior = np.log(len(rows) / len(labels))
            density = norm.logpdf(point, rows.mean(axis=0), rows.std(axis=0, ddof=1)).sum()
            assert scores[c] == pytest.approx(prior + density, abs=1e-8)

    def test_unseen_class_scores_minus_infinity(self) -> None:
        stats = GaussianLeafStats(1)
        stats.update(np.array([0.0]), 0)
        stats.update(np.array([1.0]), 2)
        scores = stats.log_joint(np.array([0.5]))
        assert scores[1] == -np.inf
        assert np.isfinite(scores[[0, 2]]).all()

    def test_single_class_has_no_split(self) -> None:
        stats = GaussianLeafStats(2)
        for t in range(50):
            stats.update(np.array([float(t), 1.0]), 0)
        assert stats.best_splits(10) == []

    def test_separated_classes_split_on_informative_feature(self) -> None:
        rng = np.random.default_rng(7)
        stats = GaussianLeafStats(2)
        for t in range(200):
            label = t % 2
            stats.update(np.array([rng.normal(10.0 * label, 1.0), rng.normal()]), label)
        candidates = stats.best_splits(10)
        best = max(candidates, key=lambda c: c.merit)
        assert best.feature == 0
        assert 2.0 < best.threshold < 8.0
        assert best.merit > 0.9
        np.testing.assert_allclose(best.left_counts + best.right_counts, stats.counts)

    def test_constant_feature_is_not_a_candidate(self) -> None:
        stats = GaussianLeafStats(2)
        for t in range(100):
            stats.update(np.array([float(t), 5.0]), int(t >= 50))
        assert [c.feature for c in stats.best_splits(10)] == [0]
