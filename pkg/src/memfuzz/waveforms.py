"""Source waveforms for the test circuit."""
from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from typing import Union

__all__ = ["Sine", "Constant", "Piecewise", "Waveform", "waveform_eval"]


@dataclass(frozen=True)
class Sine:
    amplitude: float
    frequency: float
    phase: float = 0.0
    offset: float = 0.0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.frequency) and self.frequency > 0.0):
            raise ValueError(f"sine frequency must be > 0, got {self.frequency}")

    def __call__(self, t: float) -> float:
        return self.offset + self.amplitude * math.sin(2.0 * math.pi * self.frequency * t + self.phase)


@dataclass(frozen=True)
class Constant:
    level: float

    def __call__(self, t: float) -> float:
        return self.level


@dataclass(frozen=True)
class Piecewise:
    """Linear interpolation between (t, v) breakpoints; the first/last
    value is held outside the covered span."""

    points: tuple[tuple[float, float], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "points", tuple((float(t), float(v)) for t, v in self.points))
        if not self.points:
            raise ValueError("piecewise waveform needs at least one breakpoint")
        times = [t for t, _ in self.points]
        if any(a >= b for a, b in zip(times, times[1:])):
            raise ValueError(f"piecewise breakpoints must be strictly increasing in t, got {times}")

    def __call__(self, t: float) -> float:
        pts = self.points
        if t <= pts[0][0]:
            return pts[0][1]
        if t >= pts[-1][0]:
            return pts[-1][1]
        hi = bisect_right([p[0] for p in pts], t)
        (t0, v0), (t1, v1) = pts[hi - 1], pts[hi]
        return v0 + (v1 - v0) * (t - t0) / (t1 - t0)


Waveform = Union[Sine, Constant, Piecewise]


def waveform_eval(waveform: Waveform, t: float) -> float:
    """Source voltage at time t >= 0."""
    return waveform(t)
