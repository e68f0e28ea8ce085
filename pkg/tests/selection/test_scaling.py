import os
import sys

# Ensure the project root is on sys.path so tests can import `src.*`
sys.path.append(
    os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
)

import numpy as np
import pytest
from sklearn.preprocessing import StandardScaler

from src.selection import RunningScaler
from src.streams import DimensionMismatchError, Instance


def rows(n: int = 1000, m: int = 8, seed: int = 0) -> np.ndarray:
    rng = np.random.default_rng(seed)
    return rng.normal(size=(n, m)) * rng.uniform(0.1, 10.0, m) + rng.uniform(-50, 50, m)


@pytest.mark.unit
class TestRunningScaler:
    def test_matches_numpy_population_moments(self) -> None:
        data = rows()
        scaler = RunningScaler()
        for t, row in enumerate(data):
            scaler.update(Instance(t, row))
        assert scaler.count == len(data)
        np.testing.assert_allclose(scaler.mean, data.mean(axis=0), rtol=0, atol=1e-9)
        np.testing.assert_allclose(scaler.variance, data.var(axis=0), rtol=1e-9, atol=1e-9)

    def test_matches_incremental_standard_scaler(self) -> None:
        data = rows(seed=1)
        scaler, reference = RunningScaler(), StandardScaler()
        for start in range(0, len(data), 100):
            chunk = data[start : start + 100]
            reference.partial_fit(chunk)
            for offset, row in enumerate(chunk):
                scaler.update(Instance(start + offset, row))
            np.testing.assert_allclose(scaler.mean, reference.mean_, atol=1e-9)
            np.testing.assert_allclose(scaler.variance, reference.var_, rtol=1e-9, atol=1e-9)

    def test_update_then_transform(self) -> None:
        scaler = RunningScaler()
        first = scaler.update(Instance(0, [4.0, -2.0])).transform(Instance(0, [4.0, -2.0]))
        assert first.features.tolist() == [0.0, 0.0]
        x = Instance(1, [6.0, -2.0], 1)
        scaled = scaler.update(x).transform(x)
        # mean 5, population std 1 on the first column; second column constant
        assert scaled.features.tolist() == pytest.approx([1.0, 0.0])
        assert scaled.label == 1 and scaled.time_index == 1

    def test_constant_feature_scales_to_zero(self) -> None:
        scaler = RunningScaler()
        for t in range(50):
            scaler.update(Instance(t, [3.0, float(t)]))
        scaled = scaler.transform(Instance(50, [3.0, 10.0]))
        assert scaled.features[0] == 0.0
        assert np.isfinite(scaled.features).all()

    def test_transform_requires_data(self) -> None:
        with pytest.raises(ValueError, match="not seen"):
            RunningScaler().transform(Instance(0, [1.0]))

    def test_dimension_mismatch(self) -> None:
        scaler = RunningScaler().update(Instance(0, [1.0, 2.0]))
        with pytest.raises(DimensionMismatchError):
            scaler.update(Instance(1, [1.0, 2.0, 3.0]))
        with pytest.raises(DimensionMismatchError):
            scaler.transform(Instance(1, [1.0]))

    def test_restrict_keeps_selected_statistics(self) -> None:
        data = rows(200, 4, seed=2)
        scaler = RunningScaler()
        for t, row in enumerate(data):
            scaler.update(Instance(t, row))
        scaler.restrict([0, 3])
        assert scaler.feature_ids == (0, 3)
        assert scaler.dimension == 2
        np.testing.assert_allclose(scaler.mean, data[:, [0, 3]].mean(axis=0), atol=1e-9)
        np.testing.assert_allclose(scaler.variance, data[:, [0, 3]].var(axis=0), rtol=1e-9)
        with pytest.raises(ValueError):
            scaler.restrict([])

    def test_first_instance_sets_feature_ids(self) -> None:
        scaler = RunningScaler().update(Instance(0, [1.0, 2.0], feature_ids=(1, 4)))
        assert scaler.feature_ids == (1, 4)

    def test_from_statistics(self) -> None:
        scaler = RunningScaler.from_statistics(10, [1.0, 2.0], [4.0, 0.0])
        assert scaler.std.tolist() == [2.0, 0.0]
        assert scaler.feature_ids == (0, 1)
        scaled = scaler.transform(Instance(0, [5.0, 7.0]))
        assert scaled.features.tolist() == [2.0, 0.0]

    @pytest.mark.parametrize(
        "count, mean, variance",
        [(0, [1.0], [1.0]), (5, [1.0, 2.0], [1.0]), (5, [1.0], [-1.0]), (5, [], [])],
    )
    def test_from_statistics_rejects_invalid(self, count, mean, variance) -> None:
        with pytest.raises(ValueError):
            RunningScaler.from_statistics(count, mean, variance)

    def test_reset(self) -> None:
        scaler = RunningScaler().update(Instance(0, [1.0]))
        scaler.reset()
        assert scaler.count == 0 and scaler.dimension is None
