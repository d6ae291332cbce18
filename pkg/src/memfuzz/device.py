"""Memristor element: affine memristance in the normalized state x,
window-scaled drift rate, and a clamped explicit Euler step.

The state x = (doped width)/(device thickness) stays in [0, 1] by
construction; the drift gain k aggregates ion mobility, R_on, and the
squared thickness into a single parameter with units 1/(A*s).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .windows import WindowSpec, window_eval

__all__ = [
    "DeviceParams",
    "memristance",
    "x_from_resistance",
    "state_derivative",
    "step",
]


@dataclass(frozen=True)
class DeviceParams:
    r_on: float
    r_off: float
    k: float
    x_init: float = 0.0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.r_on) and self.r_on > 0.0):
            raise ValueError(f"r_on must be > 0, got {self.r_on}")
        if not (math.isfinite(self.r_off) and self.r_off > self.r_on):
            raise ValueError(f"r_off must exceed r_on, got r_on={self.r_on}, r_off={self.r_off}")
        if not (math.isfinite(self.k) and self.k > 0.0):
            raise ValueError(f"k must be > 0, got {self.k}")
        if not (0.0 <= self.x_init <= 1.0):
            raise ValueError(f"x_init must lie in [0, 1], got {self.x_init}")


def memristance(params: DeviceParams, x: float) -> float:
    """Resistance at state x: r_on at x=1 (fully doped), r_off at x=0."""
    return params.r_on * x + params.r_off * (1.0 - x)


def x_from_resistance(params: DeviceParams, r: float) -> float:
    """Invert ``memristance``; r must lie in [r_on, r_off]."""
    if not (params.r_on <= r <= params.r_off):
        raise ValueError(f"resistance {r} outside [{params.r_on}, {params.r_off}]")
    return (params.r_off - r) / (params.r_off - params.r_on)


def state_derivative(params: DeviceParams, x: float, i: float, v: float,
                     window: WindowSpec) -> float:
    """dx/dt = k * i * f(x, i, v)."""
    return params.k * i * window_eval(window, x, i, v)


def step(params: DeviceParams, x: float, i: float, v: float,
         window: WindowSpec, dt: float) -> float:
    """One forward-Euler update of the state, clamped to [0, 1].

    Clamping (rather than rejecting the step) matches windows that stay
    nonzero at the boundaries: overshoot is truncated at the physical
    limit.
    """
    x_next = x + dt * state_derivative(params, x, i, v, window)
    if x_next < 0.0:
        return 0.0
    if x_next > 1.0:
        return 1.0
    return x_next
