"""Self-verification suites: closed forms, cross-oracle runs, Airy engine.

Each check returns a CheckResult; the CLI ``verify`` subcommand and the
acceptance tests both run these, so there is a single source of truth for
what "passing" means.  Reference numbers are frozen at 10 significant
digits.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import airy, nodes
from .airy import airy_ai, airy_zero
from .analytic import (
    ALT_ZERO_SEED_COEFFICIENT,
    Endpoint,
    ho_crossings,
    ho_endpoint_spectrum,
    linear_crossings,
    semiclassical_energy,
    table_rows,
)
from .potentials import HARMONIC_UNITS, LINEAR_UNITS, ModelKind, harmonic_model, linear_model
from .shooting import SolverConfig, linear_exact_eigensolve, solve_level

__all__ = ["CheckResult", "SUITES", "run_suite", "REFERENCE_CROSSING_TABLE"]

# Frozen 10-digit reference values for the linear-potential crossing table:
# (i+j, i, j, nu_ij, E_ij) with energies in units of (hbar^2 kappa^2/m)^(1/3).
REFERENCE_CROSSING_TABLE = [
    (2, 1, 1, 1.0, 1.855757081),
    (3, 1, 2, 0.7162760442, 2.597461596),
    (4, 1, 3, 0.6378135787, 3.246651172),
    (4, 2, 2, 1.0, 3.244607624),
    (5, 1, 4, 0.6011062347, 3.836630657),
    (5, 2, 3, 0.8186057411, 3.834331402),
    (6, 1, 5, 0.5798356533, 4.384362798),
    (6, 2, 4, 0.7337434899, 4.382063620),
    (6, 3, 3, 1.0, 4.381671239),
    (7, 1, 6, 0.5659576940, 4.899820070),
    (7, 2, 5, 0.6845688774, 4.897577389),
    (7, 3, 4, 0.8668224701, 4.897065861),
    (8, 1, 7, 0.5561894538, 5.389474508),
    (8, 2, 6, 0.6524849742, 5.387300034),
    (8, 3, 5, 0.7896508969, 5.386747623),
    (8, 4, 4, 1.0, 5.386613780),
    (9, 1, 8, 0.5489410219, 5.857822816),
    (9, 2, 7, 0.6299021674, 5.855715801),
    (9, 3, 6, 0.7393004182, 5.855151291),
    (9, 4, 5, 0.8948107334, 5.854960865),
    (10, 1, 9, 0.5433488546, 6.308148112),
    (10, 2, 8, 0.6131448055, 6.306104199),
    (10, 3, 7, 0.7038603682, 6.305539692),
    (10, 4, 6, 0.8261801521, 6.305322798),
    (10, 5, 5, 1.0, 6.305263006),
    (11, 1, 10, 0.5389035130, 6.742939434),
    (11, 2, 9, 0.6002164960, 6.740953468),
    (11, 3, 8, 0.6775624084, 6.740394399),
    (11, 4, 7, 0.7778733377, 6.740164761),
    (11, 5, 6, 0.9130842002, 6.740074630),
]


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    elapsed: float


def _result(name: str, started: float, failures: list[str], detail: str) -> CheckResult:
    if failures:
        shown = "; ".join(failures[:4])
        if len(failures) > 4:
            shown += f"; ... {len(failures)} failures total"
        detail = shown
    return CheckResult(name, not failures, detail, time.perf_counter() - started)


def check_table1() -> CheckResult:
    """Crossing table of the linear potential from internally computed zeros."""
    t0 = time.perf_counter()
    failures: list[str] = []
    rows = table_rows(11)
    if len(rows) != len(REFERENCE_CROSSING_TABLE):
        failures.append(f"{len(rows)} rows, expected {len(REFERENCE_CROSSING_TABLE)}")
    worst = 0.0
    for ev, (s, i, j, nu_ref, e_ref) in zip(rows, REFERENCE_CROSSING_TABLE):
        if (ev.i, ev.j) != (i, j):
            failures.append(f"row order mismatch at ({ev.i},{ev.j}) vs ({i},{j})")
            continue
        err_nu = abs(ev.nu_float - nu_ref) / nu_ref
        err_e = abs(ev.energy - e_ref) / e_ref
        worst = max(worst, err_nu, err_e)
        if err_nu > 1e-8 or err_e > 1e-8:
            failures.append(f"({i},{j}): nu err {err_nu:.2e}, E err {err_e:.2e}")
    elapsed = time.perf_counter() - t0
    if elapsed >= 1.0:
        failures.append(f"runtime {elapsed:.2f}s exceeds 1s")
    return _result(
        "table1_reproduction",
        t0,
        failures,
        f"30 rows, worst rel err {worst:.2e}, {elapsed*1e3:.0f} ms",
    )


def check_harmonic_closed_forms() -> CheckResult:
    """Exact rational identities of the harmonic crossing family, n <= 10."""
    t0 = time.perf_counter()
    failures: list[str] = []
    units = HARMONIC_UNITS
    hw = units.hbar * units.omega
    for n in range(1, 11):
        events = ho_crossings(n, units)
        for ev in events:
            nu = ev.nu
            if not isinstance(nu, Fraction):
                failures.append(f"n={n} ({ev.i},{ev.j}): nu not rational")
                continue
            if nu != Fraction(2 * (ev.i + ev.j) + 3, 4 * ev.j + 3):
                failures.append(f"n={n} ({ev.i},{ev.j}): nu closed form violated")
            # degeneracy of the two half-line ladders at nu_ij, in rationals
            left = nu / (2 * nu - 1) * Fraction(4 * ev.i + 3, 2)
            right = nu * Fraction(4 * ev.j + 3, 2)
            if left != right:
                failures.append(f"n={n} ({ev.i},{ev.j}): half-line degeneracy broken")
            if ev.energy != hw * (n + 0.5):
                failures.append(f"n={n} ({ev.i},{ev.j}): E != hbar omega (n+1/2)")
            if Fraction(1) - nu != Fraction(2 * (ev.j - ev.i), 4 * ev.j + 3):
                failures.append(f"n={n} ({ev.i},{ev.j}): 1-nu identity violated")
            if (nu == 1) != (ev.i == ev.j):
                failures.append(f"n={n} ({ev.i},{ev.j}): nu=1 iff i=j violated")
    for n in range(0, 11):
        ratio = Fraction(ho_endpoint_spectrum(n, Endpoint.NU_HALF, units)) / Fraction(
            ho_endpoint_spectrum(n, Endpoint.NU_ONE, units)
        )
        if ratio != Fraction(4 * n + 3, 4 * n + 2):
            failures.append(f"n={n}: endpoint ratio not (2n+3/2)/(2n+1)")
    return _result(
        "harmonic_closed_forms", t0, failures, "all rational identities exact for n <= 10"
    )


def check_shooting_harmonic(config: SolverConfig | None = None) -> CheckResult:
    """Shooting solver versus the closed harmonic forms."""
    t0 = time.perf_counter()
    cfg = config or SolverConfig()
    failures: list[str] = []
    worst = 0.0
    for n in range(0, 8):
        sol = solve_level(harmonic_model(1.0), n, cfg)
        rel = abs(sol.energy - (n + 0.5)) / (n + 0.5)
        worst = max(worst, rel)
        if rel > 1e-8:
            failures.append(f"nu=1 n={n}: rel err {rel:.2e}")
    for n in range(1, 6):
        for ev in ho_crossings(n):
            sol = solve_level(harmonic_model(ev.nu), n, cfg)
            rel = abs(sol.energy - (n + 0.5)) / (n + 0.5)
            if rel > 1e-7:
                failures.append(f"nu={ev.nu} n={n}: rel err {rel:.2e}")
            positions = nodes.extract_nodes(sol, cfg)
            if min(abs(p) for p in positions) >= 2.0 * sol.grid_step:
                failures.append(f"nu={ev.nu} n={n}: no node within 2h of origin")
    elapsed = time.perf_counter() - t0
    if elapsed >= 30.0:
        failures.append(f"runtime {elapsed:.1f}s exceeds 30s")
    return _result(
        "shooting_vs_analytic_harmonic",
        t0,
        failures,
        f"worst nu=1 rel err {worst:.2e}, {elapsed:.1f}s",
    )


def check_shooting_linear(config: SolverConfig | None = None) -> CheckResult:
    """Shooting solver versus the exact Airy matcher on a 20-point shear grid."""
    t0 = time.perf_counter()
    cfg = config or SolverConfig()
    failures: list[str] = []
    worst = 0.0
    for nu in np.linspace(1.0, 0.55, 20):
        for n in range(0, 7):
            exact = linear_exact_eigensolve(float(nu), n)
            sol = solve_level(linear_model(float(nu)), n, cfg)
            rel = abs(sol.energy - exact) / exact
            worst = max(worst, rel)
            if rel > 1e-7:
                failures.append(f"nu={nu:.4f} n={n}: rel err {rel:.2e}")
    return _result(
        "shooting_vs_exact_airy_linear",
        t0,
        failures,
        f"140 levels, worst rel err {worst:.2e}",
    )


def check_oscillation_crossing(config: SolverConfig | None = None) -> CheckResult:
    """Detected origin crossings against the closed-form shear values."""
    t0 = time.perf_counter()
    cfg = config or SolverConfig()
    failures: list[str] = []

    grid = np.round(np.arange(1.0, 0.55 - 1e-9, -0.01), 10)
    traj = nodes.track_nodes(ModelKind.SPLIT_HARMONIC, HARMONIC_UNITS, 4, grid, cfg)
    found = nodes.detect_crossings(traj)
    interior = [c for c in found if c.nu_star < 1.0 - 1e-9]
    expected = [9.0 / 11.0, 3.0 / 5.0]
    if len(interior) != 2:
        failures.append(f"harmonic n=4: {len(interior)} interior crossings, expected 2")
    for c, nu_ref in zip(sorted(interior, key=lambda c: -c.nu_star), expected):
        if abs(c.nu_star - nu_ref) > 1e-4:
            failures.append(
                f"harmonic crossing at {c.nu_star:.6f}, expected {nu_ref:.6f}"
            )
        if abs(c.energy_at_crossing - 4.5) > 1e-6:
            failures.append(
                f"harmonic crossing energy {c.energy_at_crossing:.9f} != 4.5 within 1e-6"
            )

    traj3 = nodes.track_nodes(ModelKind.SPLIT_LINEAR, LINEAR_UNITS, 3, grid, cfg)
    found3 = nodes.detect_crossings(traj3)
    interior3 = [c for c in found3 if c.nu_star < 1.0 - 1e-9]
    nu_13 = linear_crossings(1, 3).nu_float
    if len(interior3) != 1:
        failures.append(f"linear n=3: {len(interior3)} interior crossings, expected 1")
    else:
        if abs(interior3[0].nu_star - nu_13) > 1e-4:
            failures.append(
                f"linear crossing at {interior3[0].nu_star:.6f}, expected {nu_13:.6f}"
            )
    boundary3 = [c for c in found3 if c.nu_star >= 1.0 - 1e-9]
    if boundary3 and abs(boundary3[0].nu_star - 1.0) > 1e-9:
        failures.append("linear n=3 boundary event not at nu=1")
    return _result(
        "oscillation_crossing_correspondence",
        t0,
        failures,
        "harmonic n=4 crossings at 9/11 and 3/5; linear n=3 at nu_13",
    )


def check_near_degeneracy() -> CheckResult:
    """Energies of the i+j=6 family and their spread."""
    t0 = time.perf_counter()
    failures: list[str] = []
    refs = {(1, 5): 4.384362798, (2, 4): 4.382063620, (3, 3): 4.381671239}
    values = {}
    for (i, j), ref in refs.items():
        e = linear_crossings(i, j).energy
        values[(i, j)] = e
        rel = abs(e - ref) / ref
        if rel > 1e-8:
            failures.append(f"({i},{j}): rel err {rel:.2e}")
    spread = max(values.values()) - min(values.values())
    if not 2.5e-3 < spread < 2.9e-3:
        failures.append(f"i+j=6 spread {spread:.3e} not ~2.7e-3")
    return _result(
        "linear_near_degeneracy", t0, failures, f"spread {spread:.4e} (computed)"
    )


def check_semiclassical() -> CheckResult:
    """Large-index law discriminates the zero-asymptotic coefficient."""
    t0 = time.perf_counter()
    failures: list[str] = []
    details = []
    for i, j in [(5, 5), (5, 6)]:
        exact = linear_crossings(i, j).energy
        good = semiclassical_energy(i, j)
        bad = semiclassical_energy(i, j, zero_coefficient=ALT_ZERO_SEED_COEFFICIENT)
        dev_good = abs(good - exact) / exact
        dev_bad = abs(bad - exact) / exact
        details.append(f"({i},{j}): {dev_good:.2e} vs {dev_bad:.2e}")
        if dev_good >= 0.005:
            failures.append(f"({i},{j}): standard coefficient off by {dev_good:.2e}")
        if dev_bad <= 0.20:
            failures.append(f"({i},{j}): alternative coefficient only off {dev_bad:.2e}")
    return _result("semiclassical_coefficient", t0, failures, "; ".join(details))


def check_airy_engine() -> CheckResult:
    """ODE residual, zero interlacing, and representation overlap."""
    t0 = time.perf_counter()
    failures: list[str] = []

    fd = 1e-4
    zs = np.linspace(-20.0, 5.0, 500)
    worst = 0.0
    for z in zs:
        ai_m, _ = airy_ai(z - fd)
        ai_0, _ = airy_ai(z)
        ai_p, _ = airy_ai(z + fd)
        resid = abs((ai_p - 2.0 * ai_0 + ai_m) / fd**2 - z * ai_0)
        bound = 1e-6 * (1.0 + abs(z * ai_0))
        worst = max(worst, resid / bound)
        if resid > bound:
            failures.append(f"ODE residual {resid:.2e} at z={z:.3f}")

    zeros = [airy_zero(i).value for i in range(1, 21)]
    gap_signs = []
    for a, b in zip(zeros, zeros[1:]):
        if not b < a < 0.0:
            failures.append(f"zeros not strictly decreasing at {a}, {b}")
        gap = np.linspace(b + 1e-7, a - 1e-7, 64)
        signs = {math.copysign(1.0, airy_ai(z)[0]) for z in gap}
        if len(signs) != 1:
            failures.append(f"sign change strictly inside ({b:.4f}, {a:.4f})")
        else:
            gap_signs.append(signs.pop())
    if any(s1 * s2 > 0.0 for s1, s2 in zip(gap_signs, gap_signs[1:])):
        failures.append("signs do not alternate across consecutive zeros")
    head = np.linspace(zeros[0] + 1e-7, 0.0, 64)
    if any(airy_ai(z)[0] <= 0.0 for z in head):
        failures.append("Ai changes sign on (a_1, 0]")

    overlap_digits = []
    for z in (-airy.Z_SWITCH, airy.Z_SWITCH):
        ser = airy._maclaurin_decimal(z)
        asy = airy._asymptotic_negative(z) if z < 0 else airy._asymptotic_positive(z)
        env = abs(ser[0]) + abs(ser[1]) / (1.0 + abs(z)) ** 0.5
        diff = max(abs(ser[0] - asy[0]), abs(ser[1] - asy[1])) / env
        digits = -math.log10(diff) if diff > 0.0 else 17.0
        overlap_digits.append(digits)
        if digits < 12.0:
            failures.append(f"overlap at z={z} only {digits:.1f} digits")
    return _result(
        "airy_engine",
        t0,
        failures,
        f"worst residual ratio {worst:.2e}, overlap {min(overlap_digits):.1f} digits",
    )


SUITES = {
    "closed_forms": [
        check_table1,
        check_harmonic_closed_forms,
        check_near_degeneracy,
        check_semiclassical,
    ],
    "oracle_equivalence": [
        check_shooting_harmonic,
        check_shooting_linear,
        check_oscillation_crossing,
    ],
    "airy": [check_airy_engine],
}
SUITES["all"] = SUITES["closed_forms"] + SUITES["oracle_equivalence"] + SUITES["airy"]


def run_suite(name: str) -> list[CheckResult]:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    return [check() for check in SUITES[name]]
