"""Declarative JSON configuration for the CLI.

A run config names a circuit (source, series resistance, device, window,
dt, duration), optionally starting from a preset scenario; explicit
fields override preset fields.  Fuzzy windows may carry an inline system
document or reference one by file path (resolved against the config
file's directory).
"""
from __future__ import annotations

import copy
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Optional

from .device import DeviceParams, x_from_resistance
from .fuzzy import FuzzySystem, LinguisticVariable, Rule, Trapezoidal, Triangular
from .sim import CircuitConfig
from .waveforms import Constant, Piecewise, Sine, Waveform
from .windows import (
    BiolekWindow,
    FuzzyThresholdWindow,
    FuzzyWindow,
    JoglekarWindow,
    LinearWindow,
    ProdromakisWindow,
    StrukovWindow,
    WindowSpec,
)

__all__ = [
    "ConfigError",
    "RunConfig",
    "SurfaceSpec",
    "SweepSpec",
    "PRESETS",
    "load_json",
    "merge_docs",
    "parse_run_config",
    "parse_window",
    "parse_fuzzy_system",
]

SCHEMA_VERSION = 1


class ConfigError(ValueError):
    """Invalid or inconsistent configuration; message names the field."""


# Reference device and drive shared by the canned scenarios: 5 V 1 Hz
# sine, 2 kOhm series resistor, r_on 100, r_off 16k, k 1e4, seeded from
# an 11 kOhm initial memristance.
_BASE_CIRCUIT: dict[str, Any] = {
    "source": {"kind": "sine", "amplitude": 5.0, "frequency": 1.0, "phase": 0.0, "offset": 0.0},
    "series_resistance": 2000.0,
    "device": {"r_on": 100.0, "r_off": 16000.0, "k": 10000.0, "r_init": 11000.0},
    "dt": 1e-4,
    "duration": 1.0,
}


def _scenario(window: dict[str, Any], **source_overrides) -> dict[str, Any]:
    doc = copy.deepcopy(_BASE_CIRCUIT)
    doc["source"].update(source_overrides)
    doc["window"] = window
    return {"schema_version": SCHEMA_VERSION, "circuit": doc}


PRESETS: dict[str, dict[str, Any]] = {
    "fig3": _scenario({"kind": "fuzzy"}),
    "fig5": _scenario({"kind": "fuzzy_threshold"}, amplitude=0.2),
    "fig6": _scenario({"kind": "fuzzy_threshold"}),
    "joglekar_vs_fuzzy": {
        **_scenario({"kind": "joglekar", "p": 10}),
        "windows": [{"kind": "joglekar", "p": 10}, {"kind": "fuzzy"}],
    },
}


def preset_doc(name: str) -> dict[str, Any]:
    if name not in PRESETS:
        raise ConfigError(f"scenario: unknown preset {name!r}; choose from {sorted(PRESETS)}")
    return copy.deepcopy(PRESETS[name])


def load_json(path: str | Path) -> dict[str, Any]:
    text = Path(path).read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON at byte offset {exc.pos}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise ConfigError(f"{path}: top level must be a JSON object")
    return doc


def merge_docs(base: dict[str, Any], override: dict[str, Any]) -> dict[str, Any]:
    """Deep-merge override into base (dicts recurse, everything else replaces)."""
    merged = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = merge_docs(merged[key], value)
        else:
            merged[key] = copy.deepcopy(value)
    return merged


def _require(doc: dict, key: str, path: str) -> Any:
    if key not in doc:
        raise ConfigError(f"{path}.{key}: missing required field")
    return doc[key]


def _number(value: Any, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{path}: expected a number, got {value!r}")
    return float(value)


def _reject_unknown(doc: dict, known: set[str], path: str) -> None:
    extra = set(doc) - known
    if extra:
        raise ConfigError(f"{path}: unknown field(s) {sorted(extra)}")


def _parse_waveform(doc: Any, path: str) -> Waveform:
    if not isinstance(doc, dict):
        raise ConfigError(f"{path}: expected an object")
    kind = _require(doc, "kind", path)
    try:
        if kind == "sine":
            _reject_unknown(doc, {"kind", "amplitude", "frequency", "phase", "offset"}, path)
            return Sine(
                amplitude=_number(_require(doc, "amplitude", path), f"{path}.amplitude"),
                frequency=_number(_require(doc, "frequency", path), f"{path}.frequency"),
                phase=_number(doc.get("phase", 0.0), f"{path}.phase"),
                offset=_number(doc.get("offset", 0.0), f"{path}.offset"),
            )
        if kind == "constant":
            _reject_unknown(doc, {"kind", "level"}, path)
            return Constant(level=_number(_require(doc, "level", path), f"{path}.level"))
        if kind == "piecewise":
            _reject_unknown(doc, {"kind", "points"}, path)
            points = _require(doc, "points", path)
            if not isinstance(points, list) or not all(isinstance(p, list) and len(p) == 2 for p in points):
                raise ConfigError(f"{path}.points: expected a list of [t, v] pairs")
            return Piecewise(tuple((float(t), float(v)) for t, v in points))
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"{path}: {exc}") from None
    raise ConfigError(f"{path}.kind: unknown waveform kind {kind!r}")


def _parse_mf(doc: Any, path: str):
    if not isinstance(doc, dict):
        raise ConfigError(f"{path}: expected an object")
    shape = _require(doc, "shape", path)
    points = _require(doc, "points", path)
    if not isinstance(points, list):
        raise ConfigError(f"{path}.points: expected a list of breakpoints")
    values = [_number(p, f"{path}.points") for p in points]
    try:
        if shape == "triangular":
            if len(values) != 3:
                raise ConfigError(f"{path}.points: triangular needs 3 breakpoints, got {len(values)}")
            return Triangular(*values)
        if shape == "trapezoidal":
            if len(values) != 4:
                raise ConfigError(f"{path}.points: trapezoidal needs 4 breakpoints, got {len(values)}")
            return Trapezoidal(*values)
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"{path}: {exc}") from None
    raise ConfigError(f"{path}.shape: unknown shape {shape!r}")


def _parse_variable(doc: Any, path: str) -> LinguisticVariable:
    if not isinstance(doc, dict):
        raise ConfigError(f"{path}: expected an object")
    _reject_unknown(doc, {"name", "universe", "terms"}, path)
    universe = _require(doc, "universe", path)
    if not isinstance(universe, list) or len(universe) != 2:
        raise ConfigError(f"{path}.universe: expected [lo, hi]")
    terms_doc = _require(doc, "terms", path)
    if not isinstance(terms_doc, list) or not terms_doc:
        raise ConfigError(f"{path}.terms: expected a non-empty list")
    terms = tuple(
        (str(_require(t, "label", f"{path}.terms[{idx}]")), _parse_mf(t, f"{path}.terms[{idx}]"))
        for idx, t in enumerate(terms_doc)
    )
    try:
        return LinguisticVariable(
            name=str(_require(doc, "name", path)),
            universe=(
                _number(universe[0], f"{path}.universe"),
                _number(universe[1], f"{path}.universe"),
            ),
            terms=terms,
        )
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"{path}: {exc}") from None


def parse_fuzzy_system(doc: Any, path: str = "system") -> FuzzySystem:
    """Build a FuzzySystem from its declarative document."""
    if not isinstance(doc, dict):
        raise ConfigError(f"{path}: expected an object")
    _reject_unknown(doc, {"inputs", "output", "rules", "defuzz_resolution"}, path)
    inputs_doc = _require(doc, "inputs", path)
    if not isinstance(inputs_doc, list) or not inputs_doc:
        raise ConfigError(f"{path}.inputs: expected a non-empty list")
    inputs = tuple(_parse_variable(v, f"{path}.inputs[{idx}]") for idx, v in enumerate(inputs_doc))
    output = _parse_variable(_require(doc, "output", path), f"{path}.output")
    rules_doc = _require(doc, "rules", path)
    if not isinstance(rules_doc, list) or not rules_doc:
        raise ConfigError(f"{path}.rules: expected a non-empty list")
    rules = []
    for idx, rule in enumerate(rules_doc):
        rpath = f"{path}.rules[{idx}]"
        if not isinstance(rule, dict):
            raise ConfigError(f"{rpath}: expected an object")
        _reject_unknown(rule, {"if", "then", "weight"}, rpath)
        ante = _require(rule, "if", rpath)
        if not isinstance(ante, list) or not all(isinstance(a, list) and len(a) == 2 for a in ante):
            raise ConfigError(f"{rpath}.if: expected a list of [variable, term] pairs")
        try:
            rules.append(Rule(
                antecedents=tuple((str(v), str(t)) for v, t in ante),
                consequent=str(_require(rule, "then", rpath)),
                weight=_number(rule.get("weight", 1.0), f"{rpath}.weight"),
            ))
        except ValueError as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(f"{rpath}: {exc}") from None
    resolution = doc.get("defuzz_resolution", 1001)
    try:
        return FuzzySystem(inputs, output, tuple(rules), defuzz_resolution=resolution)
    except ValueError as exc:
        raise ConfigError(f"{path}: {exc}") from None


def _fuzzy_system_from(doc: dict, path: str, base_dir: Path) -> Optional[FuzzySystem]:
    sys_doc = doc.get("system")
    if sys_doc is None:
        return None
    if isinstance(sys_doc, str):
        return parse_fuzzy_system(load_json(base_dir / sys_doc), f"{path}.system")
    return parse_fuzzy_system(sys_doc, f"{path}.system")


def parse_window(doc: Any, path: str = "window", base_dir: Path = Path(".")) -> WindowSpec:
    if not isinstance(doc, dict):
        raise ConfigError(f"{path}: expected an object")
    kind = _require(doc, "kind", path)
    try:
        if kind == "none":
            _reject_unknown(doc, {"kind"}, path)
            return LinearWindow()
        if kind == "strukov":
            _reject_unknown(doc, {"kind"}, path)
            return StrukovWindow()
        if kind == "joglekar":
            _reject_unknown(doc, {"kind", "p"}, path)
            return JoglekarWindow(p=_number(doc.get("p", 10), f"{path}.p"))
        if kind == "biolek":
            _reject_unknown(doc, {"kind", "p"}, path)
            return BiolekWindow(p=_number(doc.get("p", 2), f"{path}.p"))
        if kind == "prodromakis":
            _reject_unknown(doc, {"kind", "p", "j"}, path)
            return ProdromakisWindow(
                p=_number(doc.get("p", 1.0), f"{path}.p"),
                j=_number(doc.get("j", 1.0), f"{path}.j"),
            )
        if kind == "fuzzy":
            _reject_unknown(doc, {"kind", "gain", "system"}, path)
            return FuzzyWindow(
                system=_fuzzy_system_from(doc, path, base_dir),
                gain=_number(doc.get("gain", 1.0), f"{path}.gain"),
            )
        if kind == "fuzzy_threshold":
            _reject_unknown(doc, {"kind", "gain", "system"}, path)
            return FuzzyThresholdWindow(
                system=_fuzzy_system_from(doc, path, base_dir),
                gain=_number(doc.get("gain", 1.0), f"{path}.gain"),
            )
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"{path}: {exc}") from None
    raise ConfigError(f"{path}.kind: unknown window kind {kind!r}")


def _parse_device(doc: Any, path: str) -> DeviceParams:
    if not isinstance(doc, dict):
        raise ConfigError(f"{path}: expected an object")
    _reject_unknown(doc, {"r_on", "r_off", "k", "x_init", "r_init"}, path)
    if "x_init" in doc and "r_init" in doc:
        raise ConfigError(f"{path}: give either x_init or r_init, not both")
    r_on = _number(_require(doc, "r_on", path), f"{path}.r_on")
    r_off = _number(_require(doc, "r_off", path), f"{path}.r_off")
    k = _number(_require(doc, "k", path), f"{path}.k")
    try:
        params = DeviceParams(r_on=r_on, r_off=r_off, k=k)
        if "r_init" in doc:
            x_init = x_from_resistance(params, _number(doc["r_init"], f"{path}.r_init"))
        else:
            x_init = _number(doc.get("x_init", 0.0), f"{path}.x_init")
        return DeviceParams(r_on=r_on, r_off=r_off, k=k, x_init=x_init)
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"{path}: {exc}") from None


def _parse_circuit(doc: Any, path: str, base_dir: Path) -> CircuitConfig:
    if not isinstance(doc, dict):
        raise ConfigError(f"{path}: expected an object")
    _reject_unknown(doc, {"source", "series_resistance", "device", "window", "dt", "duration"}, path)
    try:
        return CircuitConfig(
            source=_parse_waveform(_require(doc, "source", path), f"{path}.source"),
            series_resistance=_number(_require(doc, "series_resistance", path), f"{path}.series_resistance"),
            device=_parse_device(_require(doc, "device", path), f"{path}.device"),
            window=parse_window(_require(doc, "window", path), f"{path}.window", base_dir),
            dt=_number(_require(doc, "dt", path), f"{path}.dt"),
            duration=_number(_require(doc, "duration", path), f"{path}.duration"),
        )
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"{path}: {exc}") from None


@dataclass(frozen=True)
class SurfaceSpec:
    n_u1: int = 41
    n_x: int = 41
    u1_range: Optional[tuple[float, float]] = None


@dataclass(frozen=True)
class SweepSpec:
    axis: str
    values: tuple[float, ...]


@dataclass(frozen=True)
class RunConfig:
    schema_version: int
    circuit: Optional[CircuitConfig]
    scenario: Optional[str]
    output_path: Optional[str]
    window: Optional[WindowSpec]
    windows: Optional[tuple[WindowSpec, ...]]
    surface: SurfaceSpec
    sweep: Optional[SweepSpec]


def _parse_surface(doc: Any, path: str) -> SurfaceSpec:
    if not isinstance(doc, dict):
        raise ConfigError(f"{path}: expected an object")
    _reject_unknown(doc, {"n_u1", "n_x", "u1_range"}, path)
    n_u1 = doc.get("n_u1", 41)
    n_x = doc.get("n_x", 41)
    for name, n in (("n_u1", n_u1), ("n_x", n_x)):
        if not isinstance(n, int) or isinstance(n, bool) or n < 2:
            raise ConfigError(f"{path}.{name}: expected an integer >= 2, got {n!r}")
    u1_range = None
    if "u1_range" in doc:
        rng = doc["u1_range"]
        if not isinstance(rng, list) or len(rng) != 2:
            raise ConfigError(f"{path}.u1_range: expected [lo, hi]")
        lo = _number(rng[0], f"{path}.u1_range")
        hi = _number(rng[1], f"{path}.u1_range")
        if lo >= hi:
            raise ConfigError(f"{path}.u1_range: lo must be < hi, got {rng}")
        u1_range = (lo, hi)
    return SurfaceSpec(n_u1=n_u1, n_x=n_x, u1_range=u1_range)


def _parse_sweep(doc: Any, path: str) -> SweepSpec:
    if not isinstance(doc, dict):
        raise ConfigError(f"{path}: expected an object")
    _reject_unknown(doc, {"axis", "values"}, path)
    axis = _require(doc, "axis", path)
    if axis not in ("amplitude", "frequency", "p"):
        raise ConfigError(f"{path}.axis: expected one of amplitude/frequency/p, got {axis!r}")
    values = _require(doc, "values", path)
    if not isinstance(values, list) or not values:
        raise ConfigError(f"{path}.values: expected a non-empty list of numbers")
    return SweepSpec(axis=axis, values=tuple(_number(v, f"{path}.values") for v in values))


def parse_run_config(doc: dict[str, Any], base_dir: Path = Path(".")) -> RunConfig:
    """Validate a full run document (presets already merged in)."""
    known = {"schema_version", "scenario", "circuit", "output", "window", "windows", "surface", "sweep"}
    _reject_unknown(doc, known, "config")
    version = _require(doc, "schema_version", "config")
    if version != SCHEMA_VERSION:
        raise ConfigError(f"config.schema_version: expected {SCHEMA_VERSION}, got {version!r}")
    scenario = doc.get("scenario")
    if scenario is not None and scenario not in PRESETS:
        raise ConfigError(f"config.scenario: unknown preset {scenario!r}; choose from {sorted(PRESETS)}")
    circuit = None
    if "circuit" in doc:
        circuit = _parse_circuit(doc["circuit"], "config.circuit", base_dir)
    output_path = None
    if "output" in doc:
        out = doc["output"]
        if not isinstance(out, dict):
            raise ConfigError("config.output: expected an object")
        _reject_unknown(out, {"path", "format"}, "config.output")
        if out.get("format", "csv") != "csv":
            raise ConfigError(f"config.output.format: only 'csv' is supported, got {out.get('format')!r}")
        output_path = out.get("path")
    window = None
    if "window" in doc:
        window = parse_window(doc["window"], "config.window", base_dir)
    windows = None
    if "windows" in doc:
        wlist = doc["windows"]
        if not isinstance(wlist, list):
            raise ConfigError("config.windows: expected a list of window objects")
        windows = tuple(
            parse_window(w, f"config.windows[{idx}]", base_dir) for idx, w in enumerate(wlist)
        )
    surface = _parse_surface(doc.get("surface", {}), "config.surface")
    sweep = _parse_sweep(doc["sweep"], "config.sweep") if "sweep" in doc else None
    return RunConfig(
        schema_version=version,
        circuit=circuit,
        scenario=scenario,
        output_path=output_path,
        window=window,
        windows=windows,
        surface=surface,
        sweep=sweep,
    )
