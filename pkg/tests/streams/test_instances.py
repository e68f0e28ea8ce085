import os
import sys

# Ensure the project root is on sys.path so tests can import `src.*`
sys.path.append(
    os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
)

import numpy as np
import pytest

from src.streams import ClassSpace, Instance, StreamError, surviving_positions


@pytest.mark.unit
class TestInstance:
    def test_features_are_read_only_float_vector(self) -> None:
        x = Instance(0, [1, 2, 3], 1)
        assert x.features.dtype == np.float64
        assert x.dimension == 3
        with pytest.raises(ValueError):
            x.features[0] = 5.0

    def test_rejects_empty_features(self) -> None:
        with pytest.raises(StreamError, match="non-empty"):
            Instance(0, [])

    def test_rejects_non_finite_features(self) -> None:
        with pytest.raises(StreamError, match="finite"):
            Instance(3, [1.0, float("nan")])
        with pytest.raises(StreamError, match="finite"):
            Instance(3, [float("inf")])

    def test_rejects_negative_time_index(self) -> None:
        with pytest.raises(StreamError, match="time_index"):
            Instance(-1, [1.0])

    def test_feature_ids_must_match_dimension(self) -> None:
        with pytest.raises(StreamError, match="feature ids"):
            Instance(0, [1.0, 2.0], 0, (0,))

    def test_select_tracks_original_columns(self) -> None:
        x = Instance(7, [10.0, 11.0, 12.0, 13.0], 2)
        y = x.select([0, 2, 3])
        assert y.feature_ids == (0, 2, 3)
        np.testing.assert_array_equal(y.features, [10.0, 12.0, 13.0])
        z = y.select([1, 2])
        assert z.feature_ids == (2, 3)
        assert z.label == 2 and z.time_index == 7

    def test_column_ids_default_to_positions(self) -> None:
        assert Instance(0, [1.0, 2.0]).column_ids == (0, 1)


@pytest.mark.unit
class TestClassSpace:
    def test_intern_assigns_first_seen_ids(self) -> None:
        space = ClassSpace()
        assert space.intern("fault") == 0
        assert space.intern("normal") == 1
        assert space.intern("fault") == 0
        assert space.cardinality == 2
        assert space.labels == ["fault", "normal"]
        assert "normal" in space

    def test_label_of_unknown_id_falls_back_to_number(self) -> None:
        space = ClassSpace(["a"])
        assert space.label_of(0) == "a"
        assert space.label_of(4) == "4"

    def test_duplicate_labels_rejected(self) -> None:
        with pytest.raises(ValueError, match="distinct"):
            ClassSpace(["a", "a"])


@pytest.mark.unit
class TestSurvivingPositions:
    def test_prefix_when_target_has_no_ids(self) -> None:
        assert surviving_positions((0, 1, 2, 3), Instance(0, [1.0, 2.0])) == [0, 1]

    def test_follows_column_ids(self) -> None:
        target = Instance(0, [1.0, 2.0], feature_ids=(1, 3))
        assert surviving_positions((0, 1, 2, 3), target) == [1, 3]

    def test_growth_is_rejected(self) -> None:
        with pytest.raises(StreamError, match="grow"):
            surviving_positions((0,), Instance(0, [1.0, 2.0]))

    def test_reappearing_columns_are_rejected(self) -> None:
        target = Instance(0, [1.0, 2.0], feature_ids=(0, 5))
        with pytest.raises(StreamError, match="reappeared"):
            surviving_positions((0, 1, 2), target)
