"""Minimal Mamdani fuzzy inference: membership functions, linguistic
variables, weighted AND-rules, min implication, max aggregation, and
discrete centroid defuzzification over a uniform grid.

Systems are immutable after construction and evaluation is pure, so a
single system can be shared across threads without synchronization.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import cached_property
from typing import Mapping, Sequence, Union

import numpy as np

from . import _kernels

__all__ = [
    "Triangular",
    "Trapezoidal",
    "MembershipFunction",
    "LinguisticVariable",
    "Rule",
    "FuzzySystem",
]


def _piecewise_linear(a: float, b: float, c: float, d: float, u: float) -> float:
    # Degenerate segments (equal breakpoints) take the upper value of the
    # vertical jump at the shared point, so shoulder terms evaluate to 1
    # exactly on the universe edge.
    if u < a or u > d:
        return 0.0
    if u < b:
        return (u - a) / (b - a)
    if u <= c:
        return 1.0
    return (d - u) / (d - c)


def _check_ordered(points: Sequence[float], name: str) -> None:
    for p in points:
        if not math.isfinite(p):
            raise ValueError(f"{name}: breakpoints must be finite, got {points}")
    if any(lo > hi for lo, hi in zip(points, points[1:])):
        raise ValueError(f"{name}: breakpoints must be non-decreasing, got {points}")


@dataclass(frozen=True)
class Triangular:
    """Triangular membership function with feet at a, c and peak at b."""

    a: float
    b: float
    c: float

    def __post_init__(self) -> None:
        _check_ordered((self.a, self.b, self.c), "triangular")

    @property
    def corners(self) -> tuple[float, float, float, float]:
        """Equivalent trapezoid corners (the peak doubles as the plateau)."""
        return (self.a, self.b, self.b, self.c)

    def __call__(self, u: float) -> float:
        return _piecewise_linear(self.a, self.b, self.b, self.c, u)


@dataclass(frozen=True)
class Trapezoidal:
    """Trapezoidal membership function with feet a, d and plateau [b, c].

    Shoulder shapes are trapezoids whose plateau reaches the universe edge
    (b == a or c == d at that edge).
    """

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self) -> None:
        _check_ordered((self.a, self.b, self.c, self.d), "trapezoidal")

    @property
    def corners(self) -> tuple[float, float, float, float]:
        return (self.a, self.b, self.c, self.d)

    def __call__(self, u: float) -> float:
        return _piecewise_linear(self.a, self.b, self.c, self.d, u)


MembershipFunction = Union[Triangular, Trapezoidal]


@dataclass(frozen=True)
class LinguisticVariable:
    """A named scalar variable with a closed universe and labelled terms."""

    name: str
    universe: tuple[float, float]
    terms: tuple[tuple[str, MembershipFunction], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "universe", tuple(float(x) for x in self.universe))
        object.__setattr__(self, "terms", tuple((str(l), m) for l, m in self.terms))
        lo, hi = self.universe
        if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
            raise ValueError(f"variable {self.name!r}: universe must satisfy lo < hi, got {self.universe}")
        labels = [label for label, _ in self.terms]
        if len(set(labels)) != len(labels):
            raise ValueError(f"variable {self.name!r}: duplicate term labels in {labels}")
        for label, mf in self.terms:
            corners = mf.corners
            if corners[0] < lo or corners[-1] > hi:
                raise ValueError(
                    f"variable {self.name!r}: term {label!r} support {corners} "
                    f"outside universe {self.universe}"
                )

    def term(self, label: str) -> MembershipFunction:
        for term_label, mf in self.terms:
            if term_label == label:
                return mf
        raise ValueError(f"variable {self.name!r} has no term {label!r}")

    def clamp(self, u: float) -> float:
        lo, hi = self.universe
        return lo if u < lo else hi if u > hi else u


@dataclass(frozen=True)
class Rule:
    """If-then rule: AND over (variable, term) antecedents, one consequent
    term on the output variable, firing scaled by ``weight``."""

    antecedents: tuple[tuple[str, str], ...]
    consequent: str
    weight: float = 1.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "antecedents", tuple((str(v), str(t)) for v, t in self.antecedents))
        if not self.antecedents:
            raise ValueError("rule must have at least one antecedent")
        if not (0.0 < self.weight <= 1.0):
            raise ValueError(f"rule weight must lie in (0, 1], got {self.weight}")


class _Lowered:
    """Flat array form of a system, shared by both kernel backends."""

    __slots__ = ("in_lo", "in_hi", "ante_var", "ante_mf", "weights", "cons_mf", "grid")

    def __init__(self, system: "FuzzySystem") -> None:
        n_rules = len(system.rules)
        max_ante = max(len(r.antecedents) for r in system.rules)
        names = [v.name for v in system.inputs]
        self.in_lo = np.array([v.universe[0] for v in system.inputs], dtype=np.float64)
        self.in_hi = np.array([v.universe[1] for v in system.inputs], dtype=np.float64)
        self.ante_var = np.full((n_rules, max_ante), -1, dtype=np.int32)
        self.ante_mf = np.zeros((n_rules, max_ante, 4), dtype=np.float64)
        self.weights = np.array([r.weight for r in system.rules], dtype=np.float64)
        self.cons_mf = np.zeros((n_rules, 4), dtype=np.float64)
        for ri, rule in enumerate(system.rules):
            for ai, (var, label) in enumerate(rule.antecedents):
                vi = names.index(var)
                self.ante_var[ri, ai] = vi
                self.ante_mf[ri, ai, :] = system.inputs[vi].term(label).corners
            self.cons_mf[ri, :] = system.output.term(rule.consequent).corners
        lo, hi = system.output.universe
        self.grid = np.linspace(lo, hi, system.defuzz_resolution)


@dataclass(frozen=True)
class FuzzySystem:
    """Mamdani system: input variables, one output variable, a rule base,
    and the resolution of the defuzzification grid.

    ``evaluate`` clips each rule's consequent at its firing strength
    (min implication), aggregates pointwise by max over a uniform grid
    spanning the output universe, and returns the centroid of the
    aggregate.  If no rule fires at all it returns the midpoint of the
    output universe and emits a RuntimeWarning.
    """

    inputs: tuple[LinguisticVariable, ...]
    output: LinguisticVariable
    rules: tuple[Rule, ...]
    defuzz_resolution: int = 1001

    def __post_init__(self) -> None:
        object.__setattr__(self, "inputs", tuple(self.inputs))
        object.__setattr__(self, "rules", tuple(self.rules))
        if not self.inputs:
            raise ValueError("system needs at least one input variable")
        names = [v.name for v in self.inputs]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate input variable names: {names}")
        if not self.rules:
            raise ValueError("system needs at least one rule")
        if int(self.defuzz_resolution) != self.defuzz_resolution or self.defuzz_resolution < 101:
            raise ValueError(f"defuzz_resolution must be an integer >= 101, got {self.defuzz_resolution}")
        object.__setattr__(self, "defuzz_resolution", int(self.defuzz_resolution))
        for rule in self.rules:
            for var, label in rule.antecedents:
                if var not in names:
                    raise ValueError(f"rule references unknown variable {var!r}")
                self.inputs[names.index(var)].term(label)  # raises on unknown label
            self.output.term(rule.consequent)

    @cached_property
    def _lowered(self) -> _Lowered:
        return _Lowered(self)

    @cached_property
    def input_names(self) -> tuple[str, ...]:
        return tuple(v.name for v in self.inputs)

    def _vector(self, inputs: Mapping[str, float]) -> np.ndarray:
        try:
            return np.array([float(inputs[name]) for name in self.input_names])
        except KeyError as exc:
            raise ValueError(f"missing input for variable {exc.args[0]!r}") from None

    def fire_strength(self, rule: Rule, inputs: Mapping[str, float]) -> float:
        """Weight times the min over antecedent membership degrees.

        Inputs are clamped to each variable's universe before
        fuzzification, so shoulder terms extend past the declared range.
        """
        names = self.input_names
        degree = 1.0
        for var, label in rule.antecedents:
            variable = self.inputs[names.index(var)]
            degree = min(degree, variable.term(label)(variable.clamp(float(inputs[var]))))
        return rule.weight * degree

    def evaluate(self, inputs: Mapping[str, float]) -> float:
        """Crisp output for a full set of crisp inputs (keyed by name)."""
        low = self._lowered
        value, fired = _kernels.impl.mamdani_eval(
            low.in_lo, low.in_hi, low.ante_var, low.ante_mf,
            low.weights, low.cons_mf, low.grid, self._vector(inputs),
        )
        if not fired:
            warnings.warn("no rule fired; returning output-universe midpoint", RuntimeWarning, stacklevel=2)
        return value

    def evaluate_many(self, inputs: np.ndarray) -> np.ndarray:
        """Vectorized ``evaluate`` over rows of shape (n, n_inputs)."""
        low = self._lowered
        points = np.ascontiguousarray(inputs, dtype=np.float64)
        if points.ndim != 2 or points.shape[1] != len(self.inputs):
            raise ValueError(f"expected shape (n, {len(self.inputs)}), got {points.shape}")
        values, unfired = _kernels.impl.mamdani_eval_batch(
            low.in_lo, low.in_hi, low.ante_var, low.ante_mf,
            low.weights, low.cons_mf, low.grid, points,
        )
        if unfired:
            warnings.warn(
                f"no rule fired for {unfired} of {len(points)} samples; "
                "those return the output-universe midpoint",
                RuntimeWarning, stacklevel=2,
            )
        return values
