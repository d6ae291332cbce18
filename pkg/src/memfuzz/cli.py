"""memfuzz command-line front end.

    memfuzz simulate [--config FILE] [--preset NAME] [--out PATH]
    memfuzz surface  [--config FILE] [--preset NAME] [--out PATH]
    memfuzz compare  [--config FILE] [--preset NAME] [--out DIR]
    memfuzz sweep    [--config FILE] [--preset NAME] [--out PATH]
    memfuzz presets  [--preset NAME]

All numeric output is decimal text with 17 significant digits, so
re-running the same config yields byte-identical files.  Exit codes:
0 success, 2 usage or validation error, 3 runtime failure.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Optional, Sequence, TextIO

import numpy as np

from . import config as cfgmod
from .config import ConfigError, RunConfig
from .sim import RunSummary, SimRecord, simulate, summarize
from .waveforms import Sine
from .windows import (
    BiolekWindow,
    JoglekarWindow,
    ProdromakisWindow,
    electrical_axis_range,
    surface_rows,
)

RECORD_HEADER = "t,v_src,i,v_mem,x,r,f"
SURFACE_HEADER = "u1,u2,f"
SWEEP_HEADER = "value,x_min,x_max,r_at_zero_crossings,max_abs_dR,saturated"


def _fmt(value: float) -> str:
    return format(value, ".17g")


def _write_records(out: TextIO, records: Sequence[SimRecord]) -> None:
    out.write(RECORD_HEADER + "\n")
    for rec in records:
        out.write(",".join(_fmt(v) for v in rec) + "\n")


def _summary_line(summary: RunSummary) -> str:
    crossings = ";".join(_fmt(r) for r in summary.r_at_zero_crossings)
    return (
        f"x_min={_fmt(summary.x_min)} x_max={_fmt(summary.x_max)} "
        f"max_abs_dR={_fmt(summary.max_abs_dr)} "
        f"saturated={'true' if summary.saturated else 'false'} "
        f"r_at_zero_crossings=[{crossings}]"
    )


def _load_effective(args: argparse.Namespace) -> RunConfig:
    doc: dict = {}
    base_dir = Path(".")
    if args.config:
        doc = cfgmod.load_json(args.config)
        base_dir = Path(args.config).resolve().parent
    scenario = args.preset or doc.get("scenario")
    if scenario is not None:
        base = cfgmod.preset_doc(scenario)
        doc = cfgmod.merge_docs(base, doc)
        doc["scenario"] = scenario
    if not doc:
        raise ConfigError("nothing to run: give --config and/or --preset")
    return cfgmod.parse_run_config(doc, base_dir)


def _open_out(path: Optional[str]):
    if path is None:
        return sys.stdout, False
    return open(path, "w"), True


def cmd_simulate(args: argparse.Namespace) -> int:
    cfg = _load_effective(args)
    if cfg.circuit is None:
        raise ConfigError("config.circuit: required for simulate")
    records = simulate(cfg.circuit)
    summary = summarize(records)
    out, close = _open_out(args.out or cfg.output_path)
    try:
        _write_records(out, records)
    finally:
        if close:
            out.close()
    # keep the CSV stream clean when it goes to stdout
    print(_summary_line(summary), file=sys.stdout if close else sys.stderr)
    return 0


def cmd_surface(args: argparse.Namespace) -> int:
    cfg = _load_effective(args)
    window = cfg.window
    if window is None and cfg.circuit is not None:
        window = cfg.circuit.window
    if window is None:
        raise ConfigError("config.window: required for surface")
    spec = cfg.surface
    lo, hi = spec.u1_range if spec.u1_range is not None else electrical_axis_range(window)
    u1s = np.linspace(lo, hi, spec.n_u1)
    xs = np.linspace(0.0, 1.0, spec.n_x)
    out, close = _open_out(args.out or cfg.output_path)
    try:
        out.write(SURFACE_HEADER + "\n")
        for u1, u2, f in surface_rows(window, u1s, xs):
            out.write(f"{_fmt(u1)},{_fmt(u2)},{_fmt(f)}\n")
    finally:
        if close:
            out.close()
    return 0


def cmd_compare(args: argparse.Namespace) -> int:
    cfg = _load_effective(args)
    if cfg.circuit is None:
        raise ConfigError("config.circuit: required for compare")
    if cfg.windows is None or len(cfg.windows) < 2:
        raise ConfigError("config.windows: compare needs at least two window specs")
    out_dir = Path(args.out) if args.out else None
    if out_dir is not None:
        out_dir.mkdir(parents=True, exist_ok=True)
    rows = []
    for idx, window in enumerate(cfg.windows):
        circuit = dataclasses.replace(cfg.circuit, window=window)
        records = simulate(circuit)
        rows.append((window.label(), summarize(records)))
        if out_dir is not None:
            with open(out_dir / f"{idx:02d}_{window.kind}.csv", "w") as fh:
                _write_records(fh, records)
    width = max(len("window"), max(len(label) for label, _ in rows))
    print(f"{'window':<{width}}  {'x_min':>12}  {'x_max':>12}  {'max_abs_dR':>12}  saturated")
    for label, summary in rows:
        print(
            f"{label:<{width}}  {summary.x_min:>12.6g}  {summary.x_max:>12.6g}  "
            f"{summary.max_abs_dr:>12.6g}  {'true' if summary.saturated else 'false'}"
        )
    return 0


def _sweep_circuit(cfg: RunConfig, axis: str, value: float):
    circuit = cfg.circuit
    try:
        if axis in ("amplitude", "frequency"):
            if not isinstance(circuit.source, Sine):
                raise ConfigError(f"config.sweep.axis: {axis!r} requires a sine source")
            return dataclasses.replace(circuit, source=dataclasses.replace(circuit.source, **{axis: value}))
        if not isinstance(circuit.window, (JoglekarWindow, BiolekWindow, ProdromakisWindow)):
            raise ConfigError("config.sweep.axis: 'p' requires a joglekar, biolek, or prodromakis window")
        return dataclasses.replace(circuit, window=dataclasses.replace(circuit.window, p=value))
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(f"config.sweep.values: {exc}") from None


def cmd_sweep(args: argparse.Namespace) -> int:
    cfg = _load_effective(args)
    if cfg.circuit is None:
        raise ConfigError("config.circuit: required for sweep")
    if cfg.sweep is None:
        raise ConfigError("config.sweep: required for sweep")
    circuits = [_sweep_circuit(cfg, cfg.sweep.axis, value) for value in cfg.sweep.values]
    with ThreadPoolExecutor(max_workers=min(8, len(circuits))) as pool:
        summaries = list(pool.map(lambda c: summarize(simulate(c)), circuits))
    out, close = _open_out(args.out or cfg.output_path)
    try:
        out.write(SWEEP_HEADER + "\n")
        for value, summary in zip(cfg.sweep.values, summaries):
            crossings = ";".join(_fmt(r) for r in summary.r_at_zero_crossings)
            out.write(
                f"{_fmt(value)},{_fmt(summary.x_min)},{_fmt(summary.x_max)},"
                f"{crossings},{_fmt(summary.max_abs_dr)},"
                f"{'true' if summary.saturated else 'false'}\n"
            )
    finally:
        if close:
            out.close()
    return 0


def cmd_presets(args: argparse.Namespace) -> int:
    if args.preset:
        doc = cfgmod.preset_doc(args.preset)
    else:
        doc = cfgmod.PRESETS
    json.dump(doc, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="memfuzz",
        description="Memristor transient simulator with pluggable drift windows.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    specs = (
        ("simulate", cmd_simulate, "run one circuit and write the record CSV"),
        ("surface", cmd_surface, "dump a window surface over (drive, state)"),
        ("compare", cmd_compare, "run several windows on one circuit"),
        ("sweep", cmd_sweep, "sweep one parameter axis, one summary row per value"),
        ("presets", cmd_presets, "print the canned scenario configs"),
    )
    for name, func, helptext in specs:
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--config", help="JSON run config")
        p.add_argument("--preset", help="named scenario: " + ", ".join(sorted(cfgmod.PRESETS)))
        if name != "presets":
            p.add_argument("--out", help="output file (directory for compare); stdout if omitted")
        p.set_defaults(func=func)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
