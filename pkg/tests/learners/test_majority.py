import os
import sys

# Ensure the project root is on sys.path so tests can import `src.*`
sys.path.append(
    os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
)

import numpy as np
import pytest

from src.learners import FALLBACK_LABEL, DimensionMismatchError, MajorityClassifier
from src.streams import Instance


def labeled(t: int, label: int, m: int = 2) -> Instance:
    return Instance(t, np.full(m, float(t)), label)


@pytest.mark.unit
class TestMajorityClassifier:
    def test_learner_type(self) -> None:
        assert MajorityClassifier().learner_type == "majority"

    def test_untrained_predicts_fallback(self) -> None:
        assert MajorityClassifier().predict_one(labeled(0, 3)) == FALLBACK_LABEL

    def test_predicts_most_frequent_label(self) -> None:
        learner = MajorityClassifier()
        for t, label in enumerate([2, 1, 2, 2, 1]):
            learner.learn_one(labeled(t, label))
        assert learner.predict_one(labeled(9, 0)) == 2
        assert learner.class_counts == {2: 3, 1: 2}

    def test_ties_go_to_lowest_id(self) -> None:
        learner = MajorityClassifier()
        for t, label in enumerate([3, 1, 3, 1]):
            learner.learn_one(labeled(t, label))
        assert learner.predict_one(labeled(9, 0)) == 1

    def test_reset_keeps_first_label_as_default(self) -> None:
        learner = MajorityClassifier()
        learner.learn_one(labeled(0, 4))
        learner.learn_one(labeled(1, 2))
        learner.learn_one(labeled(2, 2))
        learner.reset()
        assert learner.class_counts == {}
        assert learner.predict_one(labeled(3, 0)) == 4

    def test_size_grows_with_classes(self) -> None:
        learner = MajorityClassifier()
        assert learner.size_bytes() == 0
        learner.learn_one(labeled(0, 0))
        learner.learn_one(labeled(1, 1))
        assert learner.size_bytes() == 32

    def test_dimension_mismatch(self) -> None:
        learner = MajorityClassifier()
        learner.learn_one(labeled(0, 0, m=2))
        with pytest.raises(DimensionMismatchError, match="expected 2 features, got 3"):
            learner.predict_one(labeled(1, 0, m=3))

    def test_unlabeled_instance_cannot_be_learned(self) -> None:
        with pytest.raises(ValueError, match="no label"):
            MajorityClassifier().learn_one(Instance(0, np.zeros(2)))

    def test_clone_is_untrained(self) -> None:
        learner = MajorityClassifier()
        learner.learn_one(labeled(0, 1))
        twin = learner.clone()
        assert twin is not learner
        assert twin.class_counts == {}
        assert learner.class_counts == {1: 1}

    def test_adapt_dimension_reinitialises(self) -> None:
        learner = MajorityClassifier()
        learner.learn_one(labeled(0, 1, m=3))
        learner.adapt_dimension([0, 2])
        assert learner.dimension == 2
        assert learner.class_counts == {}
        learner.learn_one(labeled(1, 0, m=2))
