import os
import sys

# Ensure the project root is on sys.path so tests can import `src.*`
sys.path.append(
    os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
)

from unittest.mock import MagicMock

import numpy as np
import pytest

from src.drift import Ddm, DriftLevel
from src.learners import DdmWrapped, HoeffdingTree, MajorityClassifier, wrap_with_ddm
from src.streams import Instance


def constant_stream(n: int, label: int) -> list[Instance]:
    return [Instance(t, np.array([float(t % 5), 1.0]), label) for t in range(n)]


def scripted(levels: list[DriftLevel]) -> MagicMock:
    detector = MagicMock(spec=Ddm)
    detector.update.side_effect = levels
    return detector


@pytest.mark.unit
class TestDdmWrapped:
    def test_learner_type(self) -> None:
        assert wrap_with_ddm(HoeffdingTree()).learner_type == "ht+ddm"

    def test_constant_label_never_drifts(self) -> None:
        wrapped = DdmWrapped(MajorityClassifier())
        plain = MajorityClassifier()
        for x in constant_stream(500, label=1):
            assert wrapped.predict_one(x) == plain.predict_one(x)
            wrapped.learn_one(x)
            plain.learn_one(x)
        assert wrapped.drifts == 0
        assert wrapped.warnings == 0
        assert wrapped.detector.level is DriftLevel.IN_CONTROL

    def test_always_correct_stays_in_control(self) -> None:
        wrapped = DdmWrapped(MajorityClassifier())
        for x in constant_stream(300, label=0):
            wrapped.learn_one(x)
        assert wrapped.drifts == 0
        assert wrapped.detector.errors == 0

    def test_drift_restarts_inner_without_current_instance(self) -> None:
        inner = MajorityClassifier()
        for x in constant_stream(5, label=3):
            inner.learn_one(x)
        wrapped = DdmWrapped(inner, detector=scripted([DriftLevel.DRIFT]))
        wrapped.learn_one(Instance(10, np.zeros(2), 3))
        assert wrapped.drifts == 1
        assert wrapped.inner is not inner
        assert wrapped.inner.class_counts == {}

    def test_warning_window_trains_the_replacement(self) -> None:
        levels = [
            DriftLevel.WARNING,
            DriftLevel.WARNING,
            DriftLevel.IN_CONTROL,
            DriftLevel.WARNING,
            DriftLevel.DRIFT,
        ]
        wrapped = DdmWrapped(MajorityClassifier(), detector=scripted(levels))
        stream = [Instance(t, np.zeros(2), label) for t, label in enumerate([0, 0, 0, 2, 2])]

        wrapped.learn_one(stream[0])
        wrapped.learn_one(stream[1])
        assert len(wrapped.warning_buffer) == 2
        wrapped.learn_one(stream[2])
        assert len(wrapped.warning_buffer) == 0
        wrapped.learn_one(stream[3])
        wrapped.learn_one(stream[4])

        assert wrapped.warnings == 2
        assert wrapped.drifts == 1
        assert wrapped.inner.class_counts == {2: 1}
        assert len(wrapped.warning_buffer) == 0

    def test_warning_buffer_is_bounded(self) -> None:
        wrapped = DdmWrapped(
            MajorityClassifier(),
            detector=scripted([DriftLevel.WARNING] * 10),
            warning_buffer_cap=4,
        )
        for x in constant_stream(10, label=1):
            wrapped.learn_one(x)
        assert len(wrapped.warning_buffer) == 4
        assert wrapped.warning_buffer[0].time_index == 6

    def test_size_counts_buffer(self) -> None:
        wrapped = DdmWrapped(
            MajorityClassifier(), detector=scripted([DriftLevel.WARNING] * 3)
        )
        empty = wrapped.size_bytes()
        for x in constant_stream(3, label=1):
            wrapped.learn_one(x)
        assert wrapped.size_bytes() > empty + wrapped.inner.size_bytes()

    def test_adapt_dimension_selects_buffered_features(self) -> None:
        wrapped = DdmWrapped(
            MajorityClassifier(), detector=scripted([DriftLevel.WARNING] * 2)
        )
        for t in range(2):
            wrapped.learn_one(Instance(t, np.array([1.0, 2.0, 3.0]), 0))
        wrapped.adapt_dimension([0, 2])
        assert wrapped.dimension == 2
        assert all(e.dimension == 2 for e in wrapped.warning_buffer)
        assert wrapped.warning_buffer[0].features.tolist() == [1.0, 3.0]

    def test_reset(self) -> None:
        wrapped = DdmWrapped(MajorityClassifier())
        for x in constant_stream(50, label=1):
            wrapped.learn_one(x)
        wrapped.reset()
        assert wrapped.detector.n == 0
        assert wrapped.inner.class_counts == {}


@pytest.mark.integration
class TestDdmRecovery:
    def test_restart_beats_plain_tree_after_flip(self) -> None:
        rng = np.random.default_rng(2)
        xs = rng.uniform(-1.0, 1.0, 6000)
        stream = [
            Instance(t, np.array([x]), int(x >= 0) if t < 5000 else int(x < 0))
            for t, x in enumerate(xs)
        ]
        wrapped, plain = DdmWrapped(HoeffdingTree()), HoeffdingTree()
        wrapped_hits, plain_hits = [], []
        for x in stream:
            wrapped_hits.append(wrapped.predict_one(x) == x.label)
            plain_hits.append(plain.predict_one(x) == x.label)
            wrapped.learn_one(x)
            plain.learn_one(x)
        assert wrapped.drifts >= 1
        after = slice(5000, 6000)
        assert np.mean(wrapped_hits[after]) > np.mean(plain_hits[after]) + 0.3
