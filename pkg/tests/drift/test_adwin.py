import os
import sys

# Ensure the project root is on sys.path so tests can import `src.*`
sys.path.append(
    os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
)

import math

import numpy as np
import pytest

from src.drift import Adwin, adwin_update


def bucket_width(adwin: Adwin) -> int:
    return sum(2**level * len(row) for level, row in enumerate(adwin.rows))


@pytest.mark.unit
class TestAdwin:
    def test_defaults(self) -> None:
        adwin = Adwin()
        assert (adwin.delta, adwin.max_buckets, adwin.clock) == (0.002, 5, 32)
        assert (adwin.min_window_length, adwin.grace_period) == (5, 10)
        assert adwin.estimation == 0.0

    @pytest.mark.parametrize("value", [-0.1, 1.5])
    def test_rejects_values_outside_unit_interval(self, value: float) -> None:
        with pytest.raises(ValueError, match=r"\[0, 1\]"):
            Adwin().update(value)

    @pytest.mark.parametrize("kwargs", [{"delta": 0.0}, {"delta": 1.0}, {"max_buckets": 1}])
    def test_rejects_invalid_parameters(self, kwargs: dict) -> None:
        with pytest.raises(ValueError):
            Adwin(**kwargs)

    def test_histogram_accounts_for_every_value(self) -> None:
        rng = np.random.default_rng(0)
        values = rng.random(3000) * 0.1 + 0.45
        adwin = Adwin()
        for value in values:
            adwin.update(float(value))
            assert all(len(row) <= adwin.max_buckets for row in adwin.rows)
            assert bucket_width(adwin) == adwin.width
        assert adwin.width == len(values)
        assert adwin.total == pytest.approx(values.sum())
        assert adwin.variance == pytest.approx(values.var() * len(values), rel=1e-6)
        assert adwin.n_buckets <= adwin.max_buckets * (math.log2(adwin.width) + 2)

    def test_constant_stream_never_cuts(self) -> None:
        adwin = Adwin()
        assert not any(adwin.update(0.5) for _ in range(10000))
        assert adwin.width == 10000
        assert adwin.estimation == pytest.approx(0.5)
        assert adwin.detections == 0

    def test_bernoulli_mean_converges(self) -> None:
        close = 0
        for seed in range(20):
            rng = np.random.default_rng(seed)
            adwin = Adwin()
            for bit in rng.random(5000) < 0.3:
                adwin.update(float(bit))
            close += abs(adwin.estimation - 0.3) < 0.03
        assert close >= 19

    def test_size_tracks_buckets(self) -> None:
        adwin = Adwin()
        empty = adwin.size_bytes()
        for _ in range(100):
            adwin.update(1.0)
        assert adwin.size_bytes() > empty

    def test_reset(self) -> None:
        adwin = Adwin()
        for _ in range(100):
            adwin.update(1.0)
        adwin.reset()
        assert (adwin.width, adwin.total, adwin.n_buckets) == (0, 0.0, 0)

    def test_functional_update(self) -> None:
        adwin = Adwin()
        state, changed = adwin_update(adwin, 1.0)
        assert state is adwin and changed is False
        assert adwin.width == 1


@pytest.mark.integration
class TestAdwinDetection:
    def test_detects_mean_shift_quickly(self) -> None:
        detected = 0
        for seed in range(100):
            rng = np.random.default_rng(seed)
            bits = np.concatenate([rng.random(1000) < 0.2, rng.random(1000) < 0.8])
            adwin = Adwin()
            hits = [t for t, bit in enumerate(bits) if adwin.update(float(bit))]
            detected += any(1000 <= t < 1300 for t in hits)
            if seed == 0:
                assert adwin.estimation > 0.6
                assert adwin.width < 1500
        assert detected >= 95
