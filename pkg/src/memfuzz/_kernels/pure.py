"""Pure-Python (numpy) kernel backend.

Mirrors the compiled extension's entry points exactly; selected at import
time by the package when the extension is unavailable.  Scalar membership
evaluation keeps the same branch order as the compiled code so the two
backends agree to rounding.
"""
from __future__ import annotations

import numpy as np


def _trap(a: float, b: float, c: float, d: float, u: float) -> float:
    if u < a or u > d:
        return 0.0
    if u < b:
        return (u - a) / (b - a)
    if u <= c:
        return 1.0
    return (d - u) / (d - c)


def _trap_rows(cons_mf: np.ndarray, grid: np.ndarray) -> np.ndarray:
    """Membership of each rule's consequent term over the output grid."""
    rows = np.zeros((cons_mf.shape[0], grid.shape[0]))
    for ri in range(cons_mf.shape[0]):
        a, b, c, d = cons_mf[ri]
        rising = (grid >= a) & (grid < b)
        rows[ri, rising] = (grid[rising] - a) / (b - a)
        rows[ri, (grid >= b) & (grid <= c)] = 1.0
        falling = (grid > c) & (grid <= d)
        rows[ri, falling] = (d - grid[falling]) / (d - c)
    return rows


def _strengths(in_lo, in_hi, ante_var, ante_mf, weights, values) -> np.ndarray:
    clamped = np.minimum(np.maximum(values, in_lo), in_hi)
    n_rules, max_ante = ante_var.shape
    out = np.empty(n_rules)
    for ri in range(n_rules):
        s = 1.0
        for ai in range(max_ante):
            vi = ante_var[ri, ai]
            if vi < 0:
                continue
            a, b, c, d = ante_mf[ri, ai]
            m = _trap(a, b, c, d, clamped[vi])
            if m < s:
                s = m
        out[ri] = weights[ri] * s
    return out


def _centroid(rows: np.ndarray, grid: np.ndarray, strengths: np.ndarray) -> tuple[float, bool]:
    agg = np.maximum.reduce(np.minimum(strengths[:, None], rows))
    den = float(agg.sum())
    if den == 0.0:
        return 0.5 * (float(grid[0]) + float(grid[-1])), False
    return float(np.dot(grid, agg) / den), True


def mamdani_eval(in_lo, in_hi, ante_var, ante_mf, weights, cons_mf, grid, values):
    """Single crisp evaluation; returns (value, fired)."""
    rows = _trap_rows(cons_mf, grid)
    strengths = _strengths(in_lo, in_hi, ante_var, ante_mf, weights, values)
    return _centroid(rows, grid, strengths)


def mamdani_eval_batch(in_lo, in_hi, ante_var, ante_mf, weights, cons_mf, grid, points):
    """Evaluate many input rows; returns (values, unfired_count)."""
    rows = _trap_rows(cons_mf, grid)
    values = np.empty(points.shape[0])
    unfired = 0
    for pi in range(points.shape[0]):
        strengths = _strengths(in_lo, in_hi, ante_var, ante_mf, weights, points[pi])
        values[pi], fired = _centroid(rows, grid, strengths)
        if not fired:
            unfired += 1
    return values, unfired


def run_circuit(v_src, dt, k, r_on, r_off, r_series, x0,
                wcode, wp1, wp2,
                in_lo, in_hi, ante_var, ante_mf, weights, cons_mf, grid,
                elec_index, state_index):
    """Forward-Euler loop over the series circuit.

    ``v_src`` holds one source sample per record; the returned arrays
    store the pre-update state per sample.  Window codes: 0 constant 1,
    1 strukov, 2 joglekar(p=wp1), 3 biolek(p=wp1), 4 prodromakis(p=wp1,
    j=wp2), 5/6 fuzzy driven by current/device voltage (gain=wp1).
    Returns (i, v_mem, x, r, f, unfired_count).
    """
    n = v_src.shape[0]
    out_i = np.empty(n)
    out_v = np.empty(n)
    out_x = np.empty(n)
    out_r = np.empty(n)
    out_f = np.empty(n)
    unfired = 0
    fuzzy = wcode >= 5
    if fuzzy:
        rows = _trap_rows(cons_mf, grid)
        values = np.zeros(in_lo.shape[0])
    x = x0
    for step in range(n):
        r = r_on * x + r_off * (1.0 - x)
        cur = v_src[step] / (r + r_series)
        vm = cur * r
        if wcode == 0:
            f = 1.0
        elif wcode == 1:
            f = x - x * x
        elif wcode == 2:
            f = 1.0 - (2.0 * x - 1.0) ** (2.0 * wp1)
        elif wcode == 3:
            stp = 1.0 if -cur >= 0.0 else 0.0
            f = 1.0 - (x - stp) ** (2.0 * wp1)
        elif wcode == 4:
            f = wp2 * (1.0 - ((x - 0.5) * (x - 0.5) + 0.75) ** wp1)
        else:
            values[elec_index] = cur if wcode == 5 else vm
            values[state_index] = x
            strengths = _strengths(in_lo, in_hi, ante_var, ante_mf, weights, values)
            value, fired = _centroid(rows, grid, strengths)
            if not fired:
                unfired += 1
            f = wp1 * value
            if f < 0.0:
                f = 0.0
        out_i[step] = cur
        out_v[step] = vm
        out_x[step] = x
        out_r[step] = r
        out_f[step] = f
        if step + 1 < n:
            x = x + dt * (k * cur * f)
            if x < 0.0:
                x = 0.0
            elif x > 1.0:
                x = 1.0
    return out_i, out_v, out_x, out_r, out_f, unfired
