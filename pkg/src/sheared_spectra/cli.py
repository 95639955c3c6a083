"""Command-line front end: tables, spectrum sweeps, node tracking, verification.

Subcommands
-----------
table1     crossing table of the split linear potential (shear values nu_ij
           with their energies, 10 significant digits by default)
spectrum   E_n(nu) over a shear grid, CSV with the offset from E_n(1)
crossings  closed-form crossing tables for either model
nodes      node positions per shear value plus detected origin crossings
verify     run a verification suite; exit 0 on pass, 1 on failure

Every file written by a subcommand is paired with a JSON manifest
(<file>.manifest.json) recording the command, parameters, configuration,
tool version, and timestamp; data files themselves carry no timestamps so
repeated runs are byte-identical.  A key=value config file named by the
environment variable SHEARED_SPECTRA_CONFIG supplies solver defaults;
explicit flags win over it.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

import numpy as np

from . import __version__
from .analytic import ho_crossings, linear_crossings, table_rows
from .nodes import detect_crossings, track_nodes
from .potentials import HARMONIC_UNITS, LINEAR_UNITS, ModelKind, Units
from .shooting import SolverConfig, spectrum_sweep
from .verification import SUITES, run_suite

_MODEL_UNITS = {
    ModelKind.SPLIT_HARMONIC: HARMONIC_UNITS,
    ModelKind.SPLIT_LINEAR: LINEAR_UNITS,
}

_CONFIG_KEYS = {
    "grid_step": float,
    "domain_margin": float,
    "energy_tol": float,
    "discriminant_tol": float,
    "node_tol": float,
    "max_iter": int,
    "delta_nu_min": float,
    "digits": int,
    "jobs": int,
}


def _load_config_file(path: str) -> dict:
    values = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value, got {raw!r}")
            key, _, val = line.partition("=")
            key = key.strip()
            if key not in _CONFIG_KEYS:
                raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
            values[key] = _CONFIG_KEYS[key](val.strip())
    return values


def _solver_config(args, file_cfg: dict) -> SolverConfig:
    kwargs = {}
    for key in ("grid_step", "domain_margin", "energy_tol", "discriminant_tol",
                "node_tol", "max_iter", "delta_nu_min"):
        if key in file_cfg:
            kwargs[key] = file_cfg[key]
    if getattr(args, "grid_step", None) is not None:
        kwargs["grid_step"] = args.grid_step
    if getattr(args, "tol", None) is not None:
        kwargs["energy_tol"] = args.tol
    return SolverConfig(**kwargs)


def _fmt(value: float, digits: int) -> str:
    if value != value:  # nan
        return "nan"
    if value == 0.0:
        return "0"
    if abs(value) >= 1e6 or abs(value) < 1e-6:
        return f"{value:.{digits - 1}e}"
    return f"{value:.{digits}g}"


class _Output:
    """Writes a data file (or stdout) and its sibling manifest."""

    def __init__(self, path: str | None, args: argparse.Namespace, config: SolverConfig | None):
        self.path = path
        self.lines: list[str] = []
        self.args = args
        self.config = config

    def comment(self, text: str) -> None:
        self.lines.append(f"# {text}")

    def row(self, text: str) -> None:
        self.lines.append(text)

    def finish(self) -> int:
        body = "\n".join(self.lines) + "\n"
        if self.path is None:
            sys.stdout.write(body)
            return 0
        with open(self.path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(body)
        manifest = {
            "command": " ".join(getattr(self.args, "raw_argv", [])) or self.args.command,
            "subcommand": self.args.command,
            "parameters": {
                k: (str(v) if isinstance(v, Fraction) else v)
                for k, v in sorted(vars(self.args).items())
                if k not in {"command", "func", "raw_argv"} and v is not None
            },
            "config": dataclasses.asdict(self.config) if self.config else None,
            "outputs": [self.path],
            "tool_version": __version__,
            "timestamp": time.strftime("%Y-%m-%dT%H:%M:%S%z"),
        }
        with open(self.path + ".manifest.json", "w", encoding="utf-8") as fh:
            json.dump(manifest, fh, indent=2, sort_keys=True)
            fh.write("\n")
        return 0


def _units_comment(out: _Output, kind: ModelKind) -> None:
    units = _MODEL_UNITS[kind]
    if kind is ModelKind.SPLIT_HARMONIC:
        out.comment(
            f"units: hbar={units.hbar} m={units.mass} kappa={units.kappa} "
            f"(omega={units.omega:g}; energies in hbar*omega)"
        )
    else:
        out.comment(
            f"units: hbar={units.hbar} m={units.mass} kappa={units.kappa} "
            "(energies in (hbar^2 kappa^2/m)^(1/3))"
        )


def _model_kind(name: str) -> ModelKind:
    return ModelKind.SPLIT_HARMONIC if name == "harmonic" else ModelKind.SPLIT_LINEAR


def _nu_grid(args) -> np.ndarray:
    if args.nu is not None:
        return np.asarray([args.nu])
    steps = args.steps
    return np.linspace(args.nu_max, args.nu_min, steps)


def cmd_table1(args, file_cfg) -> int:
    digits = args.digits
    out = _Output(args.out, args, None)
    _units_comment(out, ModelKind.SPLIT_LINEAR)
    out.row("i_plus_j,i,j,nu,energy")
    for ev in table_rows(11):
        out.row(
            f"{ev.i + ev.j},{ev.i},{ev.j},{_fmt(ev.nu_float, digits)},{_fmt(ev.energy, digits)}"
        )
    return out.finish()


def _sweep_worker(payload):
    kind_value, units_tuple, n, nus, cfg_dict = payload
    kind = ModelKind(kind_value)
    units = Units(*units_tuple)
    result = spectrum_sweep(kind, units, n, nus, SolverConfig(**cfg_dict))
    return n, result.energy, result.status, result.reference_energy


def cmd_spectrum(args, file_cfg) -> int:
    kind = _model_kind(args.model)
    units = _MODEL_UNITS[kind]
    config = _solver_config(args, file_cfg)
    digits = args.digits
    nus = _nu_grid(args)
    levels = list(range(0, args.nmax + 1))
    jobs = args.jobs or file_cfg.get("jobs", 1)

    results = {}
    if jobs > 1 and len(levels) > 1:
        payloads = [
            (kind.value, (units.hbar, units.mass, units.kappa), n, list(map(float, nus)),
             dataclasses.asdict(config))
            for n in levels
        ]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for n, energy, status, ref in pool.map(_sweep_worker, payloads):
                results[n] = (energy, status, ref)
    else:
        for n in levels:
            sweep = spectrum_sweep(kind, units, n, nus, config)
            results[n] = (sweep.energy, sweep.status, sweep.reference_energy)

    out = _Output(args.out, args, config)
    _units_comment(out, kind)
    out.comment(f"model={args.model} levels 0..{args.nmax}")
    out.row("nu,n,energy,energy_minus_E_n1,status")
    for n in levels:
        energy, status, ref = results[n]
        for k, nu in enumerate(nus):
            stat = status[k] or "ok"
            out.row(
                f"{_fmt(float(nu), digits)},{n},{_fmt(energy[k], digits)},"
                f"{_fmt(energy[k] - ref, digits)},{stat}"
            )
    return out.finish()


def cmd_crossings(args, file_cfg) -> int:
    kind = _model_kind(args.model)
    digits = args.digits
    out = _Output(args.out, args, None)
    _units_comment(out, kind)
    if kind is ModelKind.SPLIT_HARMONIC:
        out.row("n,i,j,nu_exact,nu,energy")
        for n in range(1, args.nmax + 1):
            for ev in ho_crossings(n):
                out.row(
                    f"{ev.n},{ev.i},{ev.j},{ev.nu},"
                    f"{_fmt(ev.nu_float, digits)},{_fmt(ev.energy, digits)}"
                )
    else:
        out.row("n,i,j,nu,energy")
        for s in range(2, args.nmax + 2):
            for i in range(1, s // 2 + 1):
                ev = linear_crossings(i, s - i)
                if ev.n > args.nmax:
                    continue
                out.row(
                    f"{ev.n},{ev.i},{ev.j},{_fmt(ev.nu_float, digits)},"
                    f"{_fmt(ev.energy, digits)}"
                )
    return out.finish()


def cmd_nodes(args, file_cfg) -> int:
    kind = _model_kind(args.model)
    units = _MODEL_UNITS[kind]
    config = _solver_config(args, file_cfg)
    digits = args.digits
    nus = _nu_grid(args)
    trajectory = track_nodes(kind, units, args.n, nus, config)
    found = detect_crossings(trajectory)

    out = _Output(args.out, args, config)
    _units_comment(out, kind)
    out.comment(f"model={args.model} n={args.n}")
    out.row("nu,n,energy,node_index,position")
    for (nu, positions), energy in zip(trajectory.samples, trajectory.energies):
        for idx, pos in enumerate(positions):
            out.row(
                f"{_fmt(nu, digits)},{args.n},{_fmt(energy, digits)},"
                f"{idx},{_fmt(float(pos), digits)}"
            )
    out.comment("crossings")
    out.row("nu_star,left_count_before,energy_at_crossing")
    for c in found:
        out.row(
            f"{_fmt(c.nu_star, digits)},{c.left_count_before},"
            f"{_fmt(c.energy_at_crossing, digits)}"
        )
    if trajectory.monotonicity_violations:
        out.comment(
            f"monotonicity violations: {len(trajectory.monotonicity_violations)}"
        )
    return out.finish()


def cmd_verify(args, file_cfg) -> int:
    results = run_suite(args.suite)
    report = {
        "suite": args.suite,
        "tool_version": __version__,
        "checks": [dataclasses.asdict(r) for r in results],
        "passed": all(r.passed for r in results),
    }
    for r in results:
        marker = "PASS" if r.passed else "FAIL"
        print(f"[{marker}] {r.name}: {r.detail} ({r.elapsed:.2f}s)")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(report, fh, indent=2, sort_keys=True)
            fh.write("\n")
        manifest = {
            "command": " ".join(getattr(args, "raw_argv", [])) or args.command,
            "subcommand": args.command,
            "parameters": {"suite": args.suite},
            "config": None,
            "outputs": [args.out],
            "tool_version": __version__,
            "timestamp": time.strftime("%Y-%m-%dT%H:%M:%S%z"),
        }
        with open(args.out + ".manifest.json", "w", encoding="utf-8") as fh:
            json.dump(manifest, fh, indent=2, sort_keys=True)
            fh.write("\n")
        print(f"report written to {args.out}")
    n_fail = sum(not r.passed for r in results)
    print(f"{len(results) - n_fail}/{len(results)} checks passed")
    return 0 if n_fail == 0 else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sheared-spectra",
        description="Bound states, node migration, and origin crossings of "
        "sheared one-dimensional potentials.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, model=True, sweep=False, solver=False):
        p.add_argument("--out", help="output file (default: stdout)")
        p.add_argument("--digits", type=int, default=10, help="significant digits")
        if model:
            p.add_argument(
                "--model", choices=["harmonic", "linear"], default="harmonic"
            )
        if sweep:
            p.add_argument("--nu", type=float, help="single shear value")
            p.add_argument("--nu-min", type=float, default=0.55, dest="nu_min")
            p.add_argument("--nu-max", type=float, default=1.0, dest="nu_max")
            p.add_argument("--steps", type=int, default=46)
        if solver:
            p.add_argument("--grid-step", type=float, dest="grid_step")
            p.add_argument("--tol", type=float, help="relative energy tolerance")
            p.add_argument("--jobs", type=int, help="parallel sweeps per level")

    p = sub.add_parser("table1", help="crossing table of the split linear potential")
    add_common(p, model=False)
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("spectrum", help="E_n(nu) over a shear grid")
    add_common(p, sweep=True, solver=True)
    p.add_argument("--nmax", type=int, default=4, help="highest level to sweep")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("crossings", help="closed-form crossing tables")
    add_common(p)
    p.add_argument("--nmax", type=int, default=10)
    p.set_defaults(func=cmd_crossings)

    p = sub.add_parser("nodes", help="node positions and origin crossings")
    add_common(p, sweep=True, solver=True)
    p.add_argument("-n", "--level", type=int, default=2, dest="n")
    p.set_defaults(func=cmd_nodes)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument(
        "suite",
        nargs="?",
        default="all",
        choices=sorted(SUITES),
    )
    p.add_argument("--out", help="write machine-readable JSON report here")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    raw = list(argv) if argv is not None else sys.argv[1:]
    args = parser.parse_args(raw)
    args.raw_argv = raw
    file_cfg = {}
    cfg_path = os.environ.get("SHEARED_SPECTRA_CONFIG")
    try:
        if cfg_path:
            file_cfg = _load_config_file(cfg_path)
        if "digits" in file_cfg and getattr(args, "digits", None) == 10:
            args.digits = file_cfg["digits"]
        return args.func(args, file_cfg)
    except BrokenPipeError:
        return 0
    except Exception as exc:  # execution error, distinct from check failures
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
