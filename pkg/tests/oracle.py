"""Brute-force Mamdani reference implementation.

Deliberately independent of the package internals: systems are described
by plain tuples/dicts, membership is a standalone function, and the
crisp output is the discrete centroid of the clip/max aggregate over a
dense uniform grid.  Used to cross-check the engine, so it must stay a
direct transcription of the inference definition.

System description:
    inputs : list of (name, (lo, hi), {label: (a, b, c, d)})
    output : ((lo, hi), {label: (a, b, c, d)})
    rules  : list of ([(var_name, label), ...], consequent_label, weight)
Triangles are trapezoids with b == c.
"""
from __future__ import annotations

import numpy as np


def membership(points, u):
    """Piecewise-linear degree; vertical jumps take their upper value."""
    a, b, c, d = points
    if u < a or u > d:
        return 0.0
    if u < b:
        return (u - a) / (b - a)
    if u <= c:
        return 1.0
    return (d - u) / (d - c)


def membership_grid(points, grid):
    """``membership`` applied to a numpy grid."""
    a, b, c, d = points
    out = np.zeros_like(grid)
    rising = (grid >= a) & (grid < b)
    out[rising] = (grid[rising] - a) / (b - a)
    out[(grid >= b) & (grid <= c)] = 1.0
    falling = (grid > c) & (grid <= d)
    out[falling] = (d - grid[falling]) / (d - c)
    return out


def oracle_eval(inputs, output, rules, values, resolution):
    """Crisp Mamdani output for one set of crisp inputs.

    values: {variable_name: crisp scalar}.  Inputs clamp to their
    universe; rule strength is weight * min over antecedent degrees;
    consequents clip at the strength, aggregate by pointwise max, and
    the result is sum(u * mu) / sum(mu) over the grid (universe midpoint
    if nothing fired).
    """
    (out_lo, out_hi), out_terms = output
    by_name = {name: (lo_hi, terms) for name, lo_hi, terms in inputs}
    grid = np.linspace(out_lo, out_hi, resolution)
    agg = np.zeros(resolution)
    for antecedents, consequent, weight in rules:
        degree = 1.0
        for var, label in antecedents:
            (lo, hi), terms = by_name[var]
            u = min(max(values[var], lo), hi)
            degree = min(degree, membership(terms[label], u))
        strength = weight * degree
        agg = np.maximum(agg, np.minimum(strength, membership_grid(out_terms[consequent], grid)))
    den = agg.sum()
    if den == 0.0:
        return 0.5 * (out_lo + out_hi)
    return float(np.dot(grid, agg) / den)


def oracle_eval_grid(inputs, output, rules, u1_values, u2_values, resolution):
    """Double loop over a 2-input grid; returns a (len(u1), len(u2)) array.

    The first/second input variable receives u1/u2 respectively.  The
    consequent membership grids are loop-invariant and hoisted; the rest
    matches ``oracle_eval`` line for line.
    """
    name1 = inputs[0][0]
    name2 = inputs[1][0]
    (out_lo, out_hi), out_terms = output
    by_name = {name: (lo_hi, terms) for name, lo_hi, terms in inputs}
    grid = np.linspace(out_lo, out_hi, resolution)
    cons_rows = [membership_grid(out_terms[cons], grid) for _, cons, _ in rules]
    out = np.empty((len(u1_values), len(u2_values)))
    for i1, u1 in enumerate(u1_values):
        for i2, u2 in enumerate(u2_values):
            values = {name1: u1, name2: u2}
            agg = np.zeros(resolution)
            for (antecedents, _, weight), row in zip(rules, cons_rows):
                degree = 1.0
                for var, label in antecedents:
                    (lo, hi), terms = by_name[var]
                    u = min(max(values[var], lo), hi)
                    degree = min(degree, membership(terms[label], u))
                np.maximum(agg, np.minimum(weight * degree, row), out=agg)
            den = agg.sum()
            out[i1, i2] = 0.5 * (out_lo + out_hi) if den == 0.0 else float(np.dot(grid, agg) / den)
    return out


def tri(a, b, c):
    return (a, b, b, c)


# Default rule bases, restated independently from the package so drift in
# either place shows up as a mismatch.
STATE_TERMS = {"Z": tri(0.0, 0.0, 0.5), "M": tri(0.0, 0.5, 1.0), "L": tri(0.5, 1.0, 1.0)}

CURRENT_SYSTEM = {
    "inputs": [
        ("I", (-3e-3, 3e-3), {"N": (-3e-3, -3e-3, -1e-3, 1e-3), "P": (-1e-3, 1e-3, 3e-3, 3e-3)}),
        ("X", (0.0, 1.0), STATE_TERMS),
    ],
    "output": ((0.0, 1.0), STATE_TERMS),
    "rules": [
        ([("I", "N"), ("X", "Z")], "Z", 1.0),
        ([("I", "N"), ("X", "M")], "M", 1.0),
        ([("I", "N"), ("X", "L")], "L", 1.0),
        ([("I", "P"), ("X", "Z")], "L", 1.0),
        ([("I", "P"), ("X", "M")], "M", 1.0),
        ([("I", "P"), ("X", "L")], "Z", 1.0),
    ],
    "resolution": 1001,
}

THRESHOLD_SYSTEM = {
    "inputs": [
        ("V", (-5.0, 5.0), {
            "N": (-5.0, -5.0, -0.25, -0.15),
            "Z": (-0.25, -0.15, 0.15, 0.25),
            "P": (0.15, 0.25, 5.0, 5.0),
        }),
        ("X", (0.0, 1.0), STATE_TERMS),
    ],
    "output": ((-0.5, 1.0), {"Z": tri(-0.5, 0.0, 0.5), "M": tri(0.0, 0.5, 1.0), "L": tri(0.5, 1.0, 1.0)}),
    "rules": [
        ([("V", "N"), ("X", "Z")], "Z", 1.0),
        ([("V", "N"), ("X", "M")], "M", 1.0),
        ([("V", "N"), ("X", "L")], "L", 1.0),
        ([("V", "P"), ("X", "Z")], "L", 1.0),
        ([("V", "P"), ("X", "M")], "M", 1.0),
        ([("V", "P"), ("X", "L")], "Z", 1.0),
        ([("V", "Z")], "Z", 1.0),
    ],
    "resolution": 1501,
}


def oracle_system_eval(system, values, resolution=None):
    return oracle_eval(
        system["inputs"], system["output"], system["rules"], values,
        system["resolution"] if resolution is None else resolution,
    )
