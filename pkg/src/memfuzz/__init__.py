"""memfuzz: memristor transient simulation with pluggable drift windows.

The drift window scales the dopant drift rate as a function of the
normalized state (and, for some windows, the device current or voltage).
Besides the four classic closed-form windows, a Mamdani fuzzy window is
provided in two flavours: current-driven, and voltage-driven with an
excitation threshold (dead band).
"""

from ._kernels import BACKEND as _BACKEND
from .device import DeviceParams, memristance, state_derivative, step, x_from_resistance
from .fuzzy import (
    FuzzySystem,
    LinguisticVariable,
    MembershipFunction,
    Rule,
    Trapezoidal,
    Triangular,
)
from .sim import (
    CircuitConfig,
    RunSummary,
    SimRecord,
    hysteresis_lobe_area,
    pinch_check,
    simulate,
    summarize,
)
from .waveforms import Constant, Piecewise, Sine, Waveform, waveform_eval
from .windows import (
    BiolekWindow,
    FuzzyThresholdWindow,
    FuzzyWindow,
    JoglekarWindow,
    LinearWindow,
    ProdromakisWindow,
    StrukovWindow,
    WindowSpec,
    default_current_window_system,
    default_voltage_threshold_system,
    window_eval,
)

__version__ = "0.1.0"

__all__ = [
    "BiolekWindow",
    "CircuitConfig",
    "Constant",
    "DeviceParams",
    "FuzzySystem",
    "FuzzyThresholdWindow",
    "FuzzyWindow",
    "JoglekarWindow",
    "LinearWindow",
    "LinguisticVariable",
    "MembershipFunction",
    "Piecewise",
    "ProdromakisWindow",
    "Rule",
    "RunSummary",
    "SimRecord",
    "Sine",
    "StrukovWindow",
    "Trapezoidal",
    "Triangular",
    "Waveform",
    "WindowSpec",
    "default_current_window_system",
    "default_voltage_threshold_system",
    "hysteresis_lobe_area",
    "kernel_backend",
    "memristance",
    "pinch_check",
    "simulate",
    "state_derivative",
    "step",
    "summarize",
    "waveform_eval",
    "window_eval",
    "x_from_resistance",
]


def kernel_backend() -> str:
    """Active kernel backend: "compiled" (C extension) or "pure" (numpy)."""
    return _BACKEND
