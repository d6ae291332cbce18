"""Drift window functions.

Every window maps (state x, device current i, device voltage v) to a
non-negative scaling factor f multiplying the dopant drift rate.  The
closed-form windows depend on x (Biolek also on the sign of i); the fuzzy
windows run a Mamdani system over (i, x) or (v, x), the latter giving a
voltage dead band below which the state cannot move.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import ClassVar, Optional, Union

import numpy as np

from .fuzzy import FuzzySystem, LinguisticVariable, Rule, Trapezoidal, Triangular

__all__ = [
    "LinearWindow",
    "StrukovWindow",
    "JoglekarWindow",
    "BiolekWindow",
    "ProdromakisWindow",
    "FuzzyWindow",
    "FuzzyThresholdWindow",
    "WindowSpec",
    "window_eval",
    "surface_rows",
    "default_current_window_system",
    "default_voltage_threshold_system",
]

# Input partition for the current-driven system: complementary ramps on
# +-3 mA crossing at i=0 with degree 0.5 (N + P = 1 on the overlap).
CURRENT_RANGE = 3e-3
CURRENT_KNEE = 1e-3

# Voltage-driven system: dead band is the Z plateau (|v| <= 0.15 V), the
# 0.5-crossover sits at +-0.2 V, and N/P are zero inside the band.
VOLTAGE_RANGE = 5.0
DEAD_BAND = 0.15
DEAD_BAND_FOOT = 0.25

_STATE_TERMS = (
    ("Z", Triangular(0.0, 0.0, 0.5)),
    ("M", Triangular(0.0, 0.5, 1.0)),
    ("L", Triangular(0.5, 1.0, 1.0)),
)

# (drive term, state term) -> output term: negative drive tracks the
# state partition directly, positive drive mirrors it.
_DRIVE_TABLE = (
    ("N", "Z", "Z"),
    ("N", "M", "M"),
    ("N", "L", "L"),
    ("P", "Z", "L"),
    ("P", "M", "M"),
    ("P", "L", "Z"),
)


def _drive_rules(variable: str) -> tuple[Rule, ...]:
    return tuple(
        Rule(((variable, drive), ("X", state)), out) for drive, state, out in _DRIVE_TABLE
    )


def default_current_window_system() -> FuzzySystem:
    """Six-rule system over (I, X): negative current shrinks the doped
    region so the window tracks X directly; positive current mirrors it.

    Output centroid ranges over [1/6, 5/6], so the window never reaches
    zero at either boundary: the state can always recede (no terminal
    lock-in).
    """
    current = LinguisticVariable(
        "I",
        (-CURRENT_RANGE, CURRENT_RANGE),
        (
            ("N", Trapezoidal(-CURRENT_RANGE, -CURRENT_RANGE, -CURRENT_KNEE, CURRENT_KNEE)),
            ("P", Trapezoidal(-CURRENT_KNEE, CURRENT_KNEE, CURRENT_RANGE, CURRENT_RANGE)),
        ),
    )
    state = LinguisticVariable("X", (0.0, 1.0), _STATE_TERMS)
    output = LinguisticVariable("F", (0.0, 1.0), _STATE_TERMS)
    return FuzzySystem((current, state), output, _drive_rules("I"), defuzz_resolution=1001)


def default_voltage_threshold_system() -> FuzzySystem:
    """Seven-rule system over (V, X) with an excitation dead band.

    A Z term covers |v| <= 0.15 V and fires "F is Z" alone there.  The
    output Z is mirrored about 0 (universe extended to -0.5) so its
    clipped centroid is exactly 0: below threshold the window emits
    f = 0 and the state is frozen.  The 1501-point grid keeps u = 0 on
    the grid, symmetric across the Z support.
    """
    voltage = LinguisticVariable(
        "V",
        (-VOLTAGE_RANGE, VOLTAGE_RANGE),
        (
            ("N", Trapezoidal(-VOLTAGE_RANGE, -VOLTAGE_RANGE, -DEAD_BAND_FOOT, -DEAD_BAND)),
            ("Z", Trapezoidal(-DEAD_BAND_FOOT, -DEAD_BAND, DEAD_BAND, DEAD_BAND_FOOT)),
            ("P", Trapezoidal(DEAD_BAND, DEAD_BAND_FOOT, VOLTAGE_RANGE, VOLTAGE_RANGE)),
        ),
    )
    state = LinguisticVariable("X", (0.0, 1.0), _STATE_TERMS)
    output = LinguisticVariable(
        "F",
        (-0.5, 1.0),
        (
            ("Z", Triangular(-0.5, 0.0, 0.5)),
            ("M", Triangular(0.0, 0.5, 1.0)),
            ("L", Triangular(0.5, 1.0, 1.0)),
        ),
    )
    rules = _drive_rules("V") + (Rule((("V", "Z"),), "Z"),)
    return FuzzySystem((voltage, state), output, rules, defuzz_resolution=1501)


def _check_positive_int(p, name: str) -> int:
    if int(p) != p or p < 1:
        raise ValueError(f"{name} must be an integer >= 1, got {p}")
    return int(p)


@dataclass(frozen=True)
class LinearWindow:
    """Constant 1: uniform drift with no boundary treatment."""

    kind: ClassVar[str] = "none"

    def evaluate(self, x: float, i: float = 0.0, v: float = 0.0) -> float:
        return 1.0

    def label(self) -> str:
        return "none"

    def _lower(self):
        return 0, 0.0, 0.0, None, -1, -1


@dataclass(frozen=True)
class StrukovWindow:
    """x(1 - x): parabolic suppression toward both boundaries."""

    kind: ClassVar[str] = "strukov"

    def evaluate(self, x: float, i: float = 0.0, v: float = 0.0) -> float:
        return x - x * x

    def label(self) -> str:
        return "strukov"

    def _lower(self):
        return 1, 0.0, 0.0, None, -1, -1


@dataclass(frozen=True)
class JoglekarWindow:
    """1 - (2x - 1)^(2p): flat-top window, steeper shoulders as p grows."""

    p: int = 10
    kind: ClassVar[str] = "joglekar"

    def __post_init__(self) -> None:
        object.__setattr__(self, "p", _check_positive_int(self.p, "joglekar p"))

    def evaluate(self, x: float, i: float = 0.0, v: float = 0.0) -> float:
        return 1.0 - (2.0 * x - 1.0) ** (2.0 * self.p)

    def label(self) -> str:
        return f"joglekar(p={self.p})"

    def _lower(self):
        return 2, float(self.p), 0.0, None, -1, -1


@dataclass(frozen=True)
class BiolekWindow:
    """1 - (x - stp(-i))^(2p) with stp(u) = 1 for u >= 0 else 0.

    The active boundary depends on the current direction, so the state
    can always recede from a boundary it saturated at.  At i = 0 the
    negative-direction branch applies.
    """

    p: int = 2
    kind: ClassVar[str] = "biolek"

    def __post_init__(self) -> None:
        object.__setattr__(self, "p", _check_positive_int(self.p, "biolek p"))

    def evaluate(self, x: float, i: float = 0.0, v: float = 0.0) -> float:
        stp = 1.0 if -i >= 0.0 else 0.0
        return 1.0 - (x - stp) ** (2.0 * self.p)

    def label(self) -> str:
        return f"biolek(p={self.p})"

    def _lower(self):
        return 3, float(self.p), 0.0, None, -1, -1


@dataclass(frozen=True)
class ProdromakisWindow:
    """j(1 - [(x - 0.5)^2 + 0.75]^p): scalable parabolic window.

    p = 1, j = 1 reduces algebraically to the Strukov window; j scales
    the peak and may push it above 1.
    """

    p: float = 1.0
    j: float = 1.0
    kind: ClassVar[str] = "prodromakis"

    def __post_init__(self) -> None:
        if not (math.isfinite(self.p) and self.p >= 1.0):
            raise ValueError(f"prodromakis p must be >= 1, got {self.p}")
        if not (math.isfinite(self.j) and self.j > 0.0):
            raise ValueError(f"prodromakis j must be > 0, got {self.j}")

    def evaluate(self, x: float, i: float = 0.0, v: float = 0.0) -> float:
        return self.j * (1.0 - ((x - 0.5) * (x - 0.5) + 0.75) ** self.p)

    def label(self) -> str:
        return f"prodromakis(p={self.p:g},j={self.j:g})"

    def _lower(self):
        return 4, float(self.p), float(self.j), None, -1, -1


def _check_fuzzy_system(system: FuzzySystem, elec_name: str) -> None:
    names = set(system.input_names)
    if names != {elec_name, "X"}:
        raise ValueError(f"fuzzy window system must have inputs {{{elec_name!r}, 'X'}}, got {sorted(names)}")


@dataclass(frozen=True)
class FuzzyWindow:
    """Mamdani window over (I, X); the device voltage input is ignored.

    ``gain`` rescales the defuzzified output (centroid defuzzification
    of the default partition tops out near 5/6, so gain plays the same
    role as the Prodromakis j).  Negative rounding residue is clipped
    to zero; values above 1 pass through.
    """

    system: Optional[FuzzySystem] = None
    gain: float = 1.0
    kind: ClassVar[str] = "fuzzy"
    _elec: ClassVar[str] = "I"

    def __post_init__(self) -> None:
        if self.system is None:
            object.__setattr__(self, "system", default_current_window_system())
        _check_fuzzy_system(self.system, self._elec)
        if not (math.isfinite(self.gain) and self.gain > 0.0):
            raise ValueError(f"fuzzy window gain must be > 0, got {self.gain}")

    def evaluate(self, x: float, i: float = 0.0, v: float = 0.0) -> float:
        value = self.gain * self.system.evaluate({self._elec: i, "X": x})
        return 0.0 if value < 0.0 else value

    def label(self) -> str:
        return self.kind

    def _lower(self):
        low = self.system._lowered
        elec = self.system.input_names.index(self._elec)
        state = self.system.input_names.index("X")
        code = 5 if self._elec == "I" else 6
        return code, float(self.gain), 0.0, low, elec, state


@dataclass(frozen=True)
class FuzzyThresholdWindow(FuzzyWindow):
    """Mamdani window over (V, X) with an excitation threshold: the
    default system emits exactly zero for |v| <= 0.15 V, so sub-threshold
    drives cannot move the state."""

    kind: ClassVar[str] = "fuzzy_threshold"
    _elec: ClassVar[str] = "V"

    def __post_init__(self) -> None:
        if self.system is None:
            object.__setattr__(self, "system", default_voltage_threshold_system())
        _check_fuzzy_system(self.system, self._elec)
        if not (math.isfinite(self.gain) and self.gain > 0.0):
            raise ValueError(f"fuzzy window gain must be > 0, got {self.gain}")

    def evaluate(self, x: float, i: float = 0.0, v: float = 0.0) -> float:
        value = self.gain * self.system.evaluate({self._elec: v, "X": x})
        return 0.0 if value < 0.0 else value


WindowSpec = Union[
    LinearWindow,
    StrukovWindow,
    JoglekarWindow,
    BiolekWindow,
    ProdromakisWindow,
    FuzzyWindow,
    FuzzyThresholdWindow,
]


def window_eval(window: WindowSpec, x: float, i: float = 0.0, v: float = 0.0) -> float:
    """Window factor at state x for device current i and voltage v.

    The caller is responsible for x in [0, 1]; i and v must be finite.
    """
    return window.evaluate(x, i, v)


def electrical_axis_range(window: WindowSpec) -> tuple[float, float]:
    """Default sweep range of the electrical input for surface dumps."""
    if isinstance(window, (FuzzyWindow, FuzzyThresholdWindow)):
        name = window._elec
        var = window.system.inputs[window.system.input_names.index(name)]
        return var.universe
    return (-1e-3, 1e-3)


def surface_rows(window: WindowSpec, u1_values, x_values):
    """Yield (u1, x, f) rows over the electrical axis times the state axis.

    Windows that depend only on x collapse the electrical axis to a
    single line per x (u1 = 0).
    """
    xs = [float(x) for x in x_values]
    if isinstance(window, (LinearWindow, StrukovWindow, JoglekarWindow, ProdromakisWindow)):
        for x in xs:
            yield 0.0, x, window.evaluate(x)
        return
    u1s = [float(u) for u in u1_values]
    if isinstance(window, BiolekWindow):
        for u1 in u1s:
            for x in xs:
                yield u1, x, window.evaluate(x, i=u1)
        return
    low = window.system._lowered
    elec = window.system.input_names.index(window._elec)
    state = window.system.input_names.index("X")
    points = np.empty((len(u1s) * len(xs), 2))
    points[:, elec] = np.repeat(u1s, len(xs))
    points[:, state] = np.tile(xs, len(u1s))
    values = window.system.evaluate_many(points)
    for row, value in zip(points, values):
        f = window.gain * float(value)
        yield float(row[elec]), float(row[state]), (0.0 if f < 0.0 else f)
