import os
import sys

# Ensure the project root is on sys.path so tests can import `src.*`
sys.path.append(
    os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
)

import numpy as np
import pytest

from src.drift import Ddm, DriftLevel, ddm_update


@pytest.mark.unit
class TestDdm:
    def test_in_control_before_minimum(self) -> None:
        ddm = Ddm()
        levels = [ddm.update(False) for _ in range(29)]
        assert set(levels) == {DriftLevel.IN_CONTROL}
        assert ddm.n == 29 and ddm.errors == 29

    def test_flawless_stream_stays_in_control(self) -> None:
        ddm = Ddm()
        assert {ddm.update(True) for _ in range(10000)} == {DriftLevel.IN_CONTROL}
        assert ddm.p_min == 0.0 and ddm.s_min == 0.0

    def test_flawless_start_makes_next_error_a_drift(self) -> None:
        ddm = Ddm()
        for _ in range(30):
            ddm.update(True)
        assert ddm.update(False) is DriftLevel.DRIFT
        assert ddm.n == 0

    def test_warning_then_recovery(self) -> None:
        ddm = Ddm()
        for t in range(1000):
            ddm.update(t % 10 != 9)
        assert ddm.error_rate == pytest.approx(0.1)
        assert ddm.p_min == pytest.approx(99 / 999, abs=1e-9)
        assert ddm.s_min == pytest.approx(0.0094537, abs=1e-6)

        burst = [ddm.update(False) for _ in range(12)]
        assert DriftLevel.DRIFT not in burst
        assert burst[-1] is DriftLevel.WARNING

        for _ in range(200):
            level = ddm.update(True)
        assert level is DriftLevel.IN_CONTROL

    def test_std(self) -> None:
        ddm = Ddm()
        for t in range(100):
            ddm.update(t % 4 != 0)
        assert ddm.std == pytest.approx(np.sqrt(0.25 * 0.75 / 100))

    @pytest.mark.parametrize(
        "kwargs",
        [{"min_instances": 0}, {"warning_level": 3.0, "drift_level": 2.0}, {"warning_level": 0.0}],
    )
    def test_rejects_invalid_parameters(self, kwargs: dict) -> None:
        with pytest.raises(ValueError):
            Ddm(**kwargs)

    def test_functional_update(self) -> None:
        ddm = Ddm()
        state, level = ddm_update(ddm, True)
        assert state is ddm and level is DriftLevel.IN_CONTROL


@pytest.mark.integration
class TestDdmDetection:
    def test_error_rate_step_is_detected_after_a_warning(self) -> None:
        detected = 0
        for seed in range(100):
            rng = np.random.default_rng(seed)
            errors = np.concatenate([rng.random(1000) < 0.1, rng.random(1000) < 0.5])
            ddm = Ddm()
            levels = [ddm.update(not bool(e)) for e in errors]
            drifts = [t for t, level in enumerate(levels) if level is DriftLevel.DRIFT]
            after = [t for t in drifts if t >= 1000]
            if not after or after[0] >= 1500:
                continue
            previous = max([t for t in drifts if t < after[0]], default=-1)
            if DriftLevel.WARNING in levels[previous + 1 : after[0]]:
                detected += 1
        assert detected >= 90
