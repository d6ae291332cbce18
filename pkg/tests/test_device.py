"""Memristance, state seeding, drift rate, and the Euler step."""
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from memfuzz import (
    DeviceParams,
    FuzzyWindow,
    JoglekarWindow,
    LinearWindow,
    StrukovWindow,
    memristance,
    state_derivative,
    step,
    x_from_resistance,
)

PAPER = DeviceParams(r_on=100.0, r_off=16000.0, k=1e4)


class TestMemristance:
    def test_undoped_is_r_off(self):
        assert memristance(PAPER, 0.0) == 16000.0

    def test_doped_is_r_on(self):
        assert memristance(PAPER, 1.0) == 100.0

    def test_initial_resistance_state(self):
        assert memristance(PAPER, 5000.0 / 15900.0) == pytest.approx(11000.0, rel=1e-12)

    def test_monotone_decreasing(self):
        values = [memristance(PAPER, x / 100.0) for x in range(101)]
        assert all(a > b for a, b in zip(values, values[1:]))

    def test_bounds(self):
        for x in (0.0, 0.25, 0.5, 0.75, 1.0):
            assert PAPER.r_on <= memristance(PAPER, x) <= PAPER.r_off


class TestXFromResistance:
    def test_extremes(self):
        assert x_from_resistance(PAPER, 16000.0) == 0.0
        assert x_from_resistance(PAPER, 100.0) == 1.0

    def test_initial_resistance(self):
        assert x_from_resistance(PAPER, 11000.0) == pytest.approx(0.3144654088050314, rel=1e-12)

    @given(st.floats(100.0, 16000.0))
    @settings(max_examples=100)
    def test_roundtrip(self, r):
        assert memristance(PAPER, x_from_resistance(PAPER, r)) == pytest.approx(r, rel=1e-12)

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            x_from_resistance(PAPER, 99.0)
        with pytest.raises(ValueError):
            x_from_resistance(PAPER, 16001.0)


class TestStateDerivative:
    def test_zero_current_means_zero_drift(self):
        for window in (LinearWindow(), StrukovWindow(), JoglekarWindow(p=10), FuzzyWindow()):
            assert state_derivative(PAPER, 0.37, 0.0, 0.0, window) == 0.0

    def test_linear_drift_product(self):
        assert state_derivative(PAPER, 0.5, 1e-3, 0.0, LinearWindow()) == pytest.approx(10.0, rel=1e-15)

    def test_saturated_flat_top_window_locks(self):
        for i in (1e-6, 1e-3, 2.4e-3):
            assert state_derivative(PAPER, 1.0, i, 0.0, JoglekarWindow(p=10)) == 0.0


class TestStep:
    def test_euler_arithmetic(self):
        x1 = step(PAPER, 0.5, 1e-3, 0.0, LinearWindow(), dt=1e-3)
        assert x1 == pytest.approx(0.51, rel=1e-14)

    def test_clamps_at_one(self):
        assert step(PAPER, 0.9999, 2e-3, 0.0, LinearWindow(), dt=1.0) == 1.0

    def test_clamps_at_zero(self):
        assert step(PAPER, 0.0001, -2e-3, 0.0, LinearWindow(), dt=1.0) == 0.0

    def test_zero_current_keeps_state(self):
        assert step(PAPER, 0.42, 0.0, 0.0, FuzzyWindow(), dt=1e-4) == 0.42

    @given(st.floats(0.0, 1.0), st.floats(-5e-3, 5e-3))
    @settings(max_examples=60, deadline=None)
    def test_state_stays_in_unit_interval(self, x, i):
        for window in (LinearWindow(), StrukovWindow(), JoglekarWindow(p=2)):
            assert 0.0 <= step(PAPER, x, i, 0.0, window, dt=0.1) <= 1.0


class TestValidation:
    def test_r_on_positive(self):
        with pytest.raises(ValueError):
            DeviceParams(r_on=0.0, r_off=100.0, k=1.0)

    def test_r_off_exceeds_r_on(self):
        with pytest.raises(ValueError):
            DeviceParams(r_on=100.0, r_off=100.0, k=1.0)

    def test_k_positive(self):
        with pytest.raises(ValueError):
            DeviceParams(r_on=1.0, r_off=2.0, k=0.0)

    def test_x_init_range(self):
        with pytest.raises(ValueError):
            DeviceParams(r_on=1.0, r_off=2.0, k=1.0, x_init=1.5)
