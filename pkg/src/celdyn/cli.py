"""Scenario front end: presets, parameter sweeps, CSV tables, verification.

A scenario is one base parameter set, optionally a sweep over exactly one
field, a linear time grid and a choice of output columns.  Ten presets
(fig1..fig10) cover the standard operating points; arbitrary scenarios come
in as a JSON document with the same field names.  Output is an RFC-4180
style CSV with 17-significant-digit floats so a re-parse is bit-identical.

`--verify` swaps CSV emission for the integrator cross-check: for every
sweep value, the closed-form moments are compared against the Runge-Kutta
march on a seeded random time sample, and the process exits 0 only if all
of them agree within tolerance.

Exit codes: 0 success/verified, 1 invalid input, 2 verification failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from .criteria import evaluate
from .dynamics import REGROUP_BAND, moments_at
from .errors import CelError, IoFailure, UnknownPreset
from .oracle import compare
from .params import SystemParams, diffusion_data, spectral_data, validate_params

__all__ = [
    "ScenarioConfig",
    "ResultTable",
    "preset",
    "load_config",
    "run",
    "emit_csv",
    "verify",
    "main",
    "PRESET_NAMES",
    "DEFAULT_OUTPUTS",
]

DEFAULT_OUTPUTS = ("v_s", "e_n", "dgcz", "hz_g", "n_a", "n_b", "c_ab", "regime")
_ALLOWED_OUTPUTS = frozenset(DEFAULT_OUTPUTS)
_PARAM_FIELDS = ("kappa", "gamma", "omega", "theta", "gain_a")

DEFAULT_T_END = 50.0
DEFAULT_POINTS = 1000

# shared sweep values for the preset families
CHI_SWEEP = (0.5, 0.7, 0.9, 1.0)
THETA_SWEEP = (0.0, 0.25, 0.5, 1.0)
GAIN_SWEEP = (10.0, 25.0, 50.0, 100.0)

_VERIFY_SEED = 20240811


@dataclass(frozen=True)
class ScenarioConfig:
    base: SystemParams
    sweep_field: str | None
    sweep_values: tuple[float, ...]
    t_end: float
    n_points: int
    outputs: tuple[str, ...]
    label: str


@dataclass(frozen=True)
class ResultTable:
    header: tuple[str, ...]
    rows: list[tuple]


def _cfg(base, field, values, outputs=DEFAULT_OUTPUTS, label=""):
    return ScenarioConfig(
        base=base,
        sweep_field=field,
        sweep_values=tuple(float(v) for v in values) if values else (),
        t_end=DEFAULT_T_END,
        n_points=DEFAULT_POINTS,
        outputs=tuple(outputs),
        label=label,
    )


def _presets() -> dict[str, ScenarioConfig]:
    quiet = SystemParams(kappa=0.5, gamma=1.0, omega=0.0, theta=0.0, gain_a=10.0)
    driven = dataclasses.replace(quiet, omega=10.0)
    pumped_quiet = SystemParams(kappa=0.5, gamma=0.75, omega=0.0, theta=0.25, gain_a=25.0)
    return {
        "fig1": _cfg(quiet, "gamma", CHI_SWEEP, label="gamma sweep, no phase noise"),
        "fig2": _cfg(
            dataclasses.replace(quiet, theta=0.25),
            "gamma",
            CHI_SWEEP,
            label="gamma sweep, theta=0.25",
        ),
        "fig3": _cfg(
            dataclasses.replace(quiet, gamma=0.75),
            "theta",
            THETA_SWEEP,
            label="theta sweep, gamma=0.75",
        ),
        "fig4": _cfg(
            dataclasses.replace(quiet, gamma=0.75, theta=0.25),
            "gain_a",
            GAIN_SWEEP,
            label="gain sweep, gamma=0.75, theta=0.25",
        ),
        "fig5": _cfg(driven, "gamma", CHI_SWEEP, label="gamma sweep, strong drive"),
        "fig6": _cfg(
            dataclasses.replace(driven, theta=0.25),
            "gamma",
            CHI_SWEEP,
            label="gamma sweep, strong drive, theta=0.25",
        ),
        "fig7": _cfg(driven, "theta", THETA_SWEEP, label="theta sweep, strong drive"),
        "fig8": _cfg(
            dataclasses.replace(driven, gamma=0.75, theta=0.25),
            "gain_a",
            GAIN_SWEEP,
            label="gain sweep, strong drive",
        ),
        "fig9": _cfg(
            pumped_quiet,
            None,
            (),
            outputs=("v_s", "dgcz"),
            label="negativity vs EPR sum, quiet pump",
        ),
        "fig10": _cfg(
            dataclasses.replace(pumped_quiet, omega=10.0),
            None,
            (),
            outputs=("v_s", "dgcz"),
            label="negativity vs EPR sum, strong drive",
        ),
    }


PRESET_NAMES = tuple(f"fig{i}" for i in range(1, 11))


def preset(fig_id: str) -> ScenarioConfig:
    table = _presets()
    if fig_id not in table:
        raise UnknownPreset(f"no preset named {fig_id!r}; choose from {', '.join(PRESET_NAMES)}")
    return table[fig_id]


def _check_config(cfg: ScenarioConfig) -> ScenarioConfig:
    if not (isinstance(cfg.t_end, float) and math.isfinite(cfg.t_end) and cfg.t_end > 0.0):
        raise IoFailure(f"t_end = {cfg.t_end!r} must be a finite positive number")
    if cfg.n_points < 2:
        raise IoFailure(f"n_points = {cfg.n_points} must be >= 2")
    bad = [o for o in cfg.outputs if o not in _ALLOWED_OUTPUTS]
    if bad:
        raise IoFailure(f"unknown outputs {bad}; allowed: {sorted(_ALLOWED_OUTPUTS)}")
    if not cfg.outputs:
        raise IoFailure("outputs must not be empty")
    if cfg.sweep_field is not None:
        if cfg.sweep_field not in _PARAM_FIELDS:
            raise IoFailure(f"unknown sweep field {cfg.sweep_field!r}")
        if not cfg.sweep_values:
            raise IoFailure("sweep over an empty value list")
    return cfg


def load_config(path: str) -> ScenarioConfig:
    """Read a scenario from a JSON document mirroring ScenarioConfig fields.

    A sweep is encoded by giving exactly one of the five parameter fields a
    list value instead of a scalar.
    """
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise IoFailure(f"cannot read config {path!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise IoFailure(f"config {path!r} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict) or "params" not in doc:
        raise IoFailure("config must be a JSON object with a 'params' entry")
    raw = doc["params"]
    if not isinstance(raw, dict):
        raise IoFailure("'params' must be an object")
    missing = [f for f in _PARAM_FIELDS if f not in raw]
    if missing:
        raise IoFailure(f"params missing fields: {missing}")
    sweep_field = None
    sweep_values: tuple[float, ...] = ()
    scalars = {}
    for field in _PARAM_FIELDS:
        value = raw[field]
        if isinstance(value, list):
            if sweep_field is not None:
                raise IoFailure(f"two sweep axes ({sweep_field}, {field}); only one allowed")
            if not value:
                raise IoFailure(f"sweep list for {field} is empty")
            sweep_field = field
            sweep_values = tuple(float(v) for v in value)
            scalars[field] = float(value[0])
        else:
            scalars[field] = float(value)
    grid = doc.get("t_grid", {})
    outputs = doc.get("outputs", list(DEFAULT_OUTPUTS))
    cfg = ScenarioConfig(
        base=SystemParams(**scalars),
        sweep_field=sweep_field,
        sweep_values=sweep_values,
        t_end=float(grid.get("t_end", DEFAULT_T_END)),
        n_points=int(grid.get("n_points", DEFAULT_POINTS)),
        outputs=tuple(outputs),
        label=str(doc.get("label", "custom")),
    )
    return _check_config(cfg)


def _sweep_items(cfg: ScenarioConfig):
    if cfg.sweep_field is None:
        yield "none", 0.0, cfg.base
        return
    for value in cfg.sweep_values:
        yield cfg.sweep_field, value, dataclasses.replace(cfg.base, **{cfg.sweep_field: value})


def run(cfg: ScenarioConfig) -> ResultTable:
    """Evaluate the criteria over the grid, sweep-major, time-minor."""
    _check_config(cfg)
    header = ("sweep_param", "sweep_value", "t") + cfg.outputs
    times = [float(t) for t in np.linspace(0.0, cfg.t_end, cfg.n_points)]
    rows: list[tuple] = []
    for name, value, params in _sweep_items(cfg):
        validate_params(params)
        spec = spectral_data(params)
        diff = diffusion_data(params)
        for t in times:
            moments = moments_at(spec, diff, t)
            rep = evaluate(moments)
            cells = {
                "v_s": rep.v_s,
                "e_n": rep.e_n,
                "dgcz": rep.dgcz,
                "hz_g": rep.hz_g,
                "n_a": moments.n_a,
                "n_b": moments.n_b,
                "c_ab": moments.c_ab,
                "regime": spec.regime,
            }
            rows.append((name, value, t) + tuple(cells[o] for o in cfg.outputs))
    return ResultTable(header=header, rows=rows)


def _format_cell(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, float):
        if math.isnan(value):
            return "nan-undefined"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return f"{value:.17g}"
    return str(value)


def emit_csv(table: ResultTable, destination: str) -> None:
    """Write the table as comma-separated text; '-' means stdout."""
    import csv

    def _dump(fh):
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(table.header)
        for row in table.rows:
            writer.writerow([_format_cell(cell) for cell in row])

    if destination == "-":
        _dump(sys.stdout)
        return
    try:
        with open(destination, "w", encoding="utf-8", newline="") as fh:
            _dump(fh)
    except OSError as exc:
        raise IoFailure(f"cannot write {destination!r}: {exc}") from exc


def verify(cfg: ScenarioConfig, draws: int, out=None) -> int:
    """Cross-check closed forms against the integrator on random times.

    Returns the process exit code: 0 when every sweep value passes, 2
    otherwise.  The time sample is seeded, so repeat runs are identical.
    """
    _check_config(cfg)
    out = out if out is not None else sys.stdout
    if draws < 1:
        raise IoFailure(f"--seed-grid wants a positive draw count, got {draws}")
    rng = np.random.default_rng(_VERIFY_SEED)
    all_ok = True
    for name, value, params in _sweep_items(cfg):
        validate_params(params)
        spec = spectral_data(params)
        sample = rng.uniform(0.0, cfg.t_end, size=draws)
        times = [0.0] + [float(t) for t in sample] + [cfg.t_end]
        near_degenerate = abs(spec.disc) <= REGROUP_BAND * spec.disc_scale
        tol = 1e-5 if near_degenerate else 1e-6
        report = compare(params, times, tolerance=tol)
        worst = max(report.max_err_n_a, report.max_err_n_b, report.max_err_c_ab)
        status = "PASS" if report.passed else "FAIL"
        print(
            f"{name}={value:g}: max rel err "
            f"n_a={report.max_err_n_a:.3e} n_b={report.max_err_n_b:.3e} "
            f"c_ab={report.max_err_c_ab:.3e} (tol {tol:g}) {status}",
            file=out,
        )
        all_ok = all_ok and report.passed and worst <= tol
    print("verified: closed forms match the moment march" if all_ok else "VERIFICATION FAILED", file=out)
    return 0 if all_ok else 2


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="celdyn",
        description="Cascade-emission laser entanglement scenarios",
    )
    parser.add_argument("--preset", help="one of fig1..fig10")
    parser.add_argument("--config", help="path to a JSON scenario")
    parser.add_argument("--t-end", type=float, default=None, help="override grid end time")
    parser.add_argument("--points", type=int, default=None, help="override grid point count")
    parser.add_argument("--out", default="-", help="CSV destination path, '-' for stdout")
    parser.add_argument(
        "--verify",
        action="store_true",
        help="compare closed forms against the integrator instead of emitting CSV",
    )
    parser.add_argument(
        "--seed-grid",
        type=int,
        default=25,
        metavar="N",
        help="random time draws per sweep value in --verify mode",
    )
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if (args.preset is None) == (args.config is None):
            print("error: exactly one of --preset or --config is required", file=sys.stderr)
            return 1
        cfg = preset(args.preset) if args.preset else load_config(args.config)
        if args.t_end is not None:
            cfg = dataclasses.replace(cfg, t_end=float(args.t_end))
        if args.points is not None:
            cfg = dataclasses.replace(cfg, n_points=int(args.points))
        _check_config(cfg)
        if args.verify:
            return verify(cfg, args.seed_grid)
        emit_csv(run(cfg), args.out)
        return 0
    except CelError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
