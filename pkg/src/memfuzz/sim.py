"""Series test circuit and transient analysis.

A voltage source drives a series resistor plus memristor.  Each Euler
step resolves the loop algebraically (i = v_src / (R(x) + R_s)), records
the pre-update sample, and advances the state by the window-scaled drift
rate.  Identical configs produce bit-identical record sequences.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from . import _kernels
from .device import DeviceParams
from .waveforms import Waveform, waveform_eval
from .windows import WindowSpec

__all__ = [
    "CircuitConfig",
    "SimRecord",
    "RunSummary",
    "SATURATION_HIGH",
    "SATURATION_LOW",
    "simulate",
    "summarize",
    "pinch_check",
    "hysteresis_lobe_area",
]

SATURATION_HIGH = 0.99
SATURATION_LOW = 0.01

_MAX_STEPS = 10**8

_EMPTY_F = np.empty(0)
_EMPTY_VAR = np.empty((0, 0), dtype=np.int32)
_EMPTY_MF3 = np.empty((0, 0, 4))
_EMPTY_MF2 = np.empty((0, 4))


@dataclass(frozen=True)
class CircuitConfig:
    source: Waveform
    series_resistance: float
    device: DeviceParams
    window: WindowSpec
    dt: float
    duration: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.series_resistance) and self.series_resistance >= 0.0):
            raise ValueError(f"series_resistance must be >= 0, got {self.series_resistance}")
        if not (math.isfinite(self.dt) and self.dt > 0.0):
            raise ValueError(f"dt must be > 0, got {self.dt}")
        if not (math.isfinite(self.duration) and self.duration >= self.dt):
            raise ValueError(f"duration must be >= dt, got {self.duration}")
        if self.duration / self.dt > _MAX_STEPS:
            raise ValueError(f"duration/dt exceeds the {_MAX_STEPS:.0e} step guard")

    @property
    def n_steps(self) -> int:
        return max(1, round(self.duration / self.dt))


class SimRecord(NamedTuple):
    """One integrator sample (state stored pre-update)."""

    t: float
    v_src: float
    i: float
    v_mem: float
    x: float
    r: float
    f: float


class RunSummary(NamedTuple):
    x_min: float
    x_max: float
    r_at_zero_crossings: tuple[float, ...]
    max_abs_dr: float
    saturated: bool


def simulate(cfg: CircuitConfig) -> list[SimRecord]:
    """Run the circuit for duration/dt steps; returns n_steps+1 records
    at t = n*dt, the last one carrying the final state."""
    n = cfg.n_steps
    v_src = np.array([waveform_eval(cfg.source, step * cfg.dt) for step in range(n + 1)])
    dev = cfg.device
    wcode, wp1, wp2, low, elec, state = cfg.window._lower()
    if low is None:
        args = (_EMPTY_F, _EMPTY_F, _EMPTY_VAR, _EMPTY_MF3, _EMPTY_F, _EMPTY_MF2, _EMPTY_F)
    else:
        args = (low.in_lo, low.in_hi, low.ante_var, low.ante_mf, low.weights, low.cons_mf, low.grid)
    out_i, out_v, out_x, out_r, out_f, unfired = _kernels.impl.run_circuit(
        v_src, cfg.dt, dev.k, dev.r_on, dev.r_off, cfg.series_resistance,
        dev.x_init, wcode, wp1, wp2, *args, elec, state,
    )
    if unfired:
        warnings.warn(
            f"window fuzzy system had no firing rule on {unfired} of {n + 1} samples",
            RuntimeWarning, stacklevel=2,
        )
    return [
        SimRecord(step * cfg.dt, float(v_src[step]), float(out_i[step]), float(out_v[step]),
                  float(out_x[step]), float(out_r[step]), float(out_f[step]))
        for step in range(n + 1)
    ]


def summarize(records: Sequence[SimRecord]) -> RunSummary:
    """State extrema, memristance at source zero crossings (linearly
    interpolated between bracketing samples), peak |r - r_first|, and the
    saturation flag."""
    if not records:
        raise ValueError("cannot summarize an empty record list")
    xs = [rec.x for rec in records]
    r_first = records[0].r
    crossings: list[float] = []
    for prev, cur in zip(records, records[1:]):
        if prev.v_src == 0.0:
            crossings.append(prev.r)
        elif prev.v_src * cur.v_src < 0.0:
            theta = prev.v_src / (prev.v_src - cur.v_src)
            crossings.append(prev.r + theta * (cur.r - prev.r))
    if records[-1].v_src == 0.0:
        crossings.append(records[-1].r)
    x_min, x_max = min(xs), max(xs)
    return RunSummary(
        x_min=x_min,
        x_max=x_max,
        r_at_zero_crossings=tuple(crossings),
        max_abs_dr=max(abs(rec.r - r_first) for rec in records),
        saturated=x_max >= SATURATION_HIGH or x_min <= SATURATION_LOW,
    )


def pinch_check(records: Sequence[SimRecord], v_eps: float) -> bool:
    """True iff the I-V trajectory passes through the origin: every sample
    with |v_mem| <= v_eps also has |i| <= v_eps / min(r).

    The minimum recorded memristance bounds r_on from above, and the
    series topology forces v_mem = i * r with r >= r_on, so a failure
    indicates corrupted records rather than a physical loop offset.
    """
    if not records:
        raise ValueError("cannot check an empty record list")
    bound = v_eps / min(rec.r for rec in records)
    return all(abs(rec.i) <= bound for rec in records if abs(rec.v_mem) <= v_eps)


def hysteresis_lobe_area(records: Sequence[SimRecord]) -> tuple[float, float]:
    """Shoelace area of the (v_mem, i) curve split at origin crossings.

    Returns (positive-voltage lobe, negative-voltage lobe) magnitudes.
    Meaningful for one full period of a periodic source, where the curve
    starts and ends at the origin.
    """
    if len(records) < 3:
        raise ValueError(f"need at least 3 records, got {len(records)}")
    pos = neg = 0.0
    for prev, cur in zip(records, records[1:]):
        cross = 0.5 * (prev.v_mem * cur.i - cur.v_mem * prev.i)
        mid = 0.5 * (prev.v_mem + cur.v_mem)
        if mid > 0.0:
            pos += cross
        elif mid < 0.0:
            neg += cross
    return abs(pos), abs(neg)
