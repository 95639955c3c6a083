"""Numerov shooting solver for the sheared potentials at arbitrary shear.

The eigenproblem -(hbar^2/2m) psi'' + V psi = E psi is integrated as
y'' = w(x) y with w = (V - E)/(hbar^2/2m) on a uniform grid that always
contains x = 0 as a grid point.  Both branches of the potential are smooth
away from the origin, so integrating each side separately and matching at
the kink keeps Numerov's O(h^4) accuracy.

The eigencondition is the scaled Wronskian of the leftward- and
rightward-integrated solutions at the origin,

    F(E) = psi_L'(0) psi_R(0) - psi_R'(0) psi_L(0),

normalized by |psi_L(0) psi_R(0)| + sqrt(|psi_L'(0) psi_R'(0)|) L so its
magnitude stays bounded.  Derivatives at the origin are one-sided 5-point
stencils, which never cross the kink and are O(h^4)-consistent.  F changes
sign exactly once inside a bracket that contains a single eigenvalue, so
levels are isolated by bisection on the node count of the left-integrated
solution and then refined with Brent's method.

A separate exact solver for the split linear potential expresses each
branch through Ai and root-finds the transcendental matching condition;
it serves as an independent oracle for the shooting machinery.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import brentq

from .airy import airy_ai, airy_zero
from .errors import (
    BracketFailureError,
    ConvergenceFailureError,
    IntegrationOverflowError,
    ShearOutOfRangeError,
)
from .potentials import (
    Model,
    ModelKind,
    Units,
    LINEAR_UNITS,
    evaluate,
    turning_point_slopes,
    turning_points,
)

__all__ = [
    "SolverConfig",
    "EigenSolution",
    "SweepResult",
    "match_discriminant",
    "solve_level",
    "spectrum_sweep",
    "linear_exact_eigensolve",
]

_SEED = 1e-300
_RENORM_EVERY = 64
_RENORM_LIMIT = 1e100


@dataclass(frozen=True)
class SolverConfig:
    """Numerical knobs of the shooting solver.

    grid_step None means automatic: the step is chosen from the requested
    relative energy tolerance (the discretization bias scales as h^4), the
    turning point separation, and the decay lengths at the turning points.
    node_tol None resolves to 2 * grid step.  delta_nu_min keeps the solver
    away from the hard-wall limit, where the left branch stiffens without
    bound; the nu = 1/2 spectrum is available in closed form instead.
    """

    grid_step: float | None = None
    domain_margin: float = 9.0
    energy_tol: float = 1e-8
    discriminant_tol: float = 1e-10
    node_tol: float | None = None
    max_iter: int = 100
    delta_nu_min: float = 1e-3

    def __post_init__(self):
        if self.grid_step is not None and not self.grid_step > 0.0:
            raise ValueError("grid_step must be positive or None")
        for name in ("domain_margin", "energy_tol", "discriminant_tol", "delta_nu_min"):
            if not getattr(self, name) > 0.0:
                raise ValueError(f"{name} must be positive")
        if self.max_iter < 10:
            raise ValueError("max_iter must be at least 10")


DEFAULT_CONFIG = SolverConfig()


@dataclass
class EigenSolution:
    """A solved bound state: energy, sampled wavefunction, node estimates.

    values are normalized to unit maximum amplitude; nodes come from
    inverse-linear interpolation of the sign changes (module nodes refines
    them further on a locally re-integrated fine grid).
    """

    n: int
    energy: float
    grid: np.ndarray
    values: np.ndarray
    nodes: list[float]
    model: Model
    grid_step: float


@dataclass
class SweepResult:
    """Energies of one level across a descending shear grid."""

    kind: ModelKind
    units: Units
    n: int
    nu: np.ndarray
    energy: np.ndarray
    status: list[str | None]
    reference_energy: float
    extrema: list[tuple[float, float]] = field(default_factory=list)


class _Grid:
    """Uniform grid containing x = 0, with the potential prescaled to w units."""

    def __init__(self, model: Model, energy_cap: float, config: SolverConfig):
        units = model.units
        self.c = units.hbar**2 / (2.0 * units.mass)
        tp = turning_points(model, energy_cap)
        g_left, g_right = turning_point_slopes(model, energy_cap)
        ell_left = (self.c / g_left) ** (1.0 / 3.0)
        ell_right = (self.c / g_right) ** (1.0 / 3.0)
        x_lo = tp.x_minus - config.domain_margin * ell_left
        x_hi = tp.x_plus + config.domain_margin * ell_right
        if config.grid_step is not None:
            h = config.grid_step
        else:
            # h^4 bias targets: the bulk term scales with the inner wavenumber
            # sqrt(E/c), the turning-zone term with the local Airy length.
            w_inner = energy_cap / self.c
            ell_min = min(ell_left, ell_right)
            h = min(
                (40.0 * config.energy_tol) ** 0.25 / math.sqrt(w_inner),
                tp.distance / 256.0,
                1.3 * ell_min * config.energy_tol**0.25,
                0.35 * ell_min,
            )
        self.h = h
        self.n_left = max(int(math.ceil(-x_lo / h)), 8)
        self.n_right = max(int(math.ceil(x_hi / h)), 8)
        self.x = np.arange(-self.n_left, self.n_right + 1) * h
        self.i_zero = self.n_left
        self.v_over_c = evaluate(model, self.x) / self.c

    def w(self, energy: float) -> np.ndarray:
        return self.v_over_c - energy / self.c


def _numerov(w: np.ndarray, h: float) -> np.ndarray:
    """Integrate y'' = w y from index 0 with a tiny seed; returns y.

    The stored prefix is rescaled whenever the running amplitude passes
    _RENORM_LIMIT (checked every _RENORM_EVERY steps), so the output is the
    solution up to an overall positive factor.
    """
    n = w.shape[0]
    f = 1.0 - (h * h / 12.0) * w
    y = np.empty(n)
    y[0] = 0.0
    y[1] = _SEED
    ym1 = 0.0
    y0 = _SEED
    fm1 = f[0]
    f0 = f[1]
    for i in range(1, n - 1):
        f1 = f[i + 1]
        y1 = ((12.0 - 10.0 * f0) * y0 - fm1 * ym1) / f1
        y[i + 1] = y1
        ym1 = y0
        y0 = y1
        fm1 = f0
        f0 = f1
        if i % _RENORM_EVERY == 0 and abs(y0) > _RENORM_LIMIT:
            scale = 1.0 / abs(y0)
            y[: i + 2] *= scale
            ym1 *= scale
            y0 *= scale
    if not np.isfinite(y).all():
        raise IntegrationOverflowError(
            "Numerov integration overflowed; renormalization cadence insufficient"
        )
    return y


def _count_sign_changes(y: np.ndarray) -> int:
    # No relative-amplitude mask: away from an eigenvalue the right tail of a
    # left-integrated solution grows by many orders of magnitude, and a peak-
    # relative cut would silently hide every node in the well.  Exact zeros
    # (seed points, underflowed stretches) are dropped instead.
    s = np.sign(y)
    s = s[s != 0.0]
    return int(np.count_nonzero(s[1:] * s[:-1] < 0.0))


def _endpoint_derivative(y: np.ndarray, h: float) -> float:
    """One-sided 5-point derivative at the last sample, O(h^4)."""
    return (
        25.0 * y[-1] - 48.0 * y[-2] + 36.0 * y[-3] - 16.0 * y[-4] + 3.0 * y[-5]
    ) / (12.0 * h)


def _check_shear(model: Model, config: SolverConfig) -> None:
    if model.nu_float < 0.5 + config.delta_nu_min:
        raise ShearOutOfRangeError(
            f"nu={model.nu_float} is within delta_nu_min={config.delta_nu_min} "
            "of the hard-wall limit; use the closed-form nu=1/2 spectrum instead"
        )


def _discriminant(grid: _Grid, energy: float) -> float:
    w = grid.w(energy)
    h = grid.h
    y_left = _numerov(w[: grid.i_zero + 1], h)
    y_right = _numerov(w[grid.i_zero :][::-1], h)
    y_left /= np.abs(y_left).max()
    y_right /= np.abs(y_right).max()
    d_left = _endpoint_derivative(y_left, h)
    # rightward sweep runs in the mirrored coordinate, so d/dx flips sign
    d_right = -_endpoint_derivative(y_right, h)
    psi_l = y_left[-1]
    psi_r = y_right[-1]
    length = grid.x[-1] - grid.x[0]
    num = d_left * psi_r - d_right * psi_l
    den = abs(psi_l * psi_r) + math.sqrt(abs(d_left * d_right)) * length + 1e-300
    return num / den


def _node_count(grid: _Grid, energy: float) -> int:
    return _count_sign_changes(_numerov(grid.w(energy), grid.h))


def match_discriminant(
    model: Model, energy: float, config: SolverConfig = DEFAULT_CONFIG
) -> float:
    """Scaled Wronskian mismatch of the two one-sided solutions at x = 0.

    Zero exactly when energy is an eigenvalue of the discretized problem.
    """
    if not energy > 0.0:
        raise ValueError(f"match_discriminant requires E > 0, got {energy}")
    _check_shear(model, config)
    return _discriminant(_Grid(model, energy, config), energy)


def _wkb_level_estimate(model: Model, n: int) -> float:
    """Rough level estimate used only to start bracket expansion."""
    units = model.units
    hbar = units.hbar
    if model.kind is ModelKind.SPLIT_HARMONIC:
        return hbar * units.omega * (n + 0.5)
    g_left, g_right = turning_point_slopes(model, 1.0)
    g_eff = g_left * g_right / (g_left + g_right)
    return (3.0 * math.pi * hbar * (n + 0.75) * g_eff / (2.0 * math.sqrt(2.0 * units.mass))) ** (
        2.0 / 3.0
    )


def solve_level(
    model: Model,
    n: int,
    config: SolverConfig = DEFAULT_CONFIG,
    energy_hint: float | None = None,
) -> EigenSolution:
    """Solve for the level with exactly n nodes.

    Brackets the eigenvalue by bisection on the node count of the
    left-integrated solution, refines the root of the matching discriminant,
    and returns the assembled wavefunction.
    """
    if n < 0:
        raise ValueError(f"node count must be >= 0, got {n}")
    _check_shear(model, config)

    if energy_hint is not None:
        lo = 0.95 * energy_hint
        hi = 1.05 * energy_hint
    else:
        est = _wkb_level_estimate(model, n)
        est_next = _wkb_level_estimate(model, n + 1)
        lo = 0.5 * est if n > 0 else 0.05 * est
        hi = 0.5 * (est + est_next)

    grid = _Grid(model, hi, config)
    scanned_lo = lo
    # expand until the bracket counts straddle the requested level
    for _ in range(config.max_iter):
        if _node_count(grid, hi) >= n + 1:
            break
        hi *= 1.6
        grid = _Grid(model, hi, config)
    else:
        raise BracketFailureError(
            f"no level {n} found while scanning up to E={hi:.6g}"
        )
    for _ in range(config.max_iter):
        if _node_count(grid, lo) <= n:
            break
        lo *= 0.5
        scanned_lo = lo
    else:
        raise BracketFailureError(
            f"node count stayed above {n} down to E={lo:.6g}"
        )

    for _ in range(config.max_iter):
        c_lo = _node_count(grid, lo)
        c_hi = _node_count(grid, hi)
        if c_lo == n and c_hi == n + 1:
            break
        mid = 0.5 * (lo + hi)
        if _node_count(grid, mid) <= n:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-15 * hi:
            raise BracketFailureError(
                f"bracket for level {n} collapsed in [{scanned_lo:.6g}, {hi:.6g}]"
            )
    else:
        raise ConvergenceFailureError(
            f"node-count bisection for level {n} did not settle in {config.max_iter} steps"
        )

    f_lo = _discriminant(grid, lo)
    f_hi = _discriminant(grid, hi)
    for _ in range(config.max_iter):
        if f_lo == 0.0 or f_hi == 0.0 or f_lo * f_hi < 0.0:
            break
        mid = 0.5 * (lo + hi)
        if _node_count(grid, mid) <= n:
            lo, f_lo = mid, _discriminant(grid, mid)
        else:
            hi, f_hi = mid, _discriminant(grid, mid)
    if f_lo == 0.0:
        energy = lo
    elif f_hi == 0.0:
        energy = hi
    elif f_lo * f_hi < 0.0:
        energy = brentq(
            lambda e: _discriminant(grid, e),
            lo,
            hi,
            xtol=1e-15 * max(1.0, hi),
            rtol=1e-14,
            maxiter=config.max_iter,
        )
    else:
        raise ConvergenceFailureError(
            f"discriminant does not change sign across [{lo:.9g}, {hi:.9g}]"
        )

    residual = abs(_discriminant(grid, energy))
    if residual > max(config.discriminant_tol, 1e-9):
        raise ConvergenceFailureError(
            f"converged energy {energy:.9g} leaves |F|={residual:.3e}"
        )
    return _assemble_solution(model, grid, energy, n, config)


def _assemble_solution(
    model: Model, grid: _Grid, energy: float, n: int, config: SolverConfig
) -> EigenSolution:
    w = grid.w(energy)
    h = grid.h
    y_left = _numerov(w[: grid.i_zero + 1], h)
    y_right = _numerov(w[grid.i_zero :][::-1], h)
    y_left /= np.abs(y_left).max()
    y_right /= np.abs(y_right).max()
    d_left = _endpoint_derivative(y_left, h)
    d_right = -_endpoint_derivative(y_right, h)
    length = grid.x[-1] - grid.x[0]
    # least-squares glue on (value, slope); robust when the origin is a node
    denom = y_right[-1] ** 2 + (length * d_right) ** 2
    scale = (y_left[-1] * y_right[-1] + length**2 * d_left * d_right) / denom
    values = np.concatenate([y_left[:-1], scale * y_right[::-1]])
    values[grid.i_zero] = 0.5 * (y_left[-1] + scale * y_right[-1])
    values /= np.abs(values).max()
    lobe = np.argmax(np.abs(values) > 0.25)
    if values[lobe] < 0.0:
        values = -values

    count = _count_sign_changes(values)
    if count != n:
        raise ConvergenceFailureError(
            f"assembled wavefunction has {count} sign changes, expected {n}"
        )
    tp = turning_points(model, energy)
    nodes = _linear_nodes(grid.x, values, tp.x_minus, tp.x_plus)
    return EigenSolution(
        n=n,
        energy=energy,
        grid=grid.x,
        values=values,
        nodes=nodes,
        model=model,
        grid_step=h,
    )


def _linear_nodes(x: np.ndarray, y: np.ndarray, x_lo: float, x_hi: float) -> list[float]:
    """Inverse-linear node estimates from sign changes inside (x_lo, x_hi)."""
    peak = np.abs(y).max()
    nodes = []
    sig = np.abs(y) > 1e-11 * peak
    prev = None
    for i in range(len(y)):
        if not sig[i]:
            continue
        if prev is not None and y[prev] * y[i] < 0.0:
            xa, xb = x[prev], x[i]
            ya, yb = y[prev], y[i]
            xn = xa - ya * (xb - xa) / (yb - ya)
            if x_lo < xn < x_hi:
                nodes.append(float(xn))
        prev = i
    return nodes


def spectrum_sweep(
    kind: ModelKind,
    units: Units,
    n: int,
    nu_grid: Sequence[float],
    config: SolverConfig = DEFAULT_CONFIG,
    on_result: Callable[[float, float | None], None] | None = None,
) -> SweepResult:
    """Solve level n across a descending shear grid with continuation.

    Failures at individual grid points are recorded in status and the sweep
    continues.  Intervals where the slope of E(nu) - E(nu=1) changes sign
    are flagged as oscillation extrema.
    """
    nus = np.asarray(list(nu_grid), dtype=float)
    if nus.ndim != 1 or len(nus) == 0:
        raise ValueError("nu_grid must be a non-empty 1-d sequence")
    if np.any(np.diff(nus) >= 0.0):
        raise ValueError("nu_grid must be strictly descending")
    if nus[0] > 1.0 + 1e-12:
        raise ShearOutOfRangeError("nu_grid must lie within (1/2, 1]")
    if nus[-1] < 0.5 + config.delta_nu_min:
        raise ShearOutOfRangeError(
            f"nu_grid reaches below 1/2 + delta_nu_min = {0.5 + config.delta_nu_min}"
        )

    if kind is ModelKind.SPLIT_HARMONIC:
        reference = units.hbar * units.omega * (n + 0.5)
    else:
        reference = solve_level(Model(kind, units, 1.0), n, config).energy

    energies = np.full(len(nus), np.nan)
    status: list[str | None] = [None] * len(nus)
    hint = None
    for k, nu in enumerate(nus):
        try:
            sol = solve_level(Model(kind, units, float(nu)), n, config, energy_hint=hint)
        except Exception as exc:  # per-point failure, sweep continues
            status[k] = f"{type(exc).__name__}: {exc}"
            hint = None
        else:
            energies[k] = sol.energy
            hint = sol.energy
        if on_result is not None:
            on_result(float(nu), None if status[k] else float(energies[k]))

    extrema = []
    ok = np.where(np.isfinite(energies))[0]
    d = np.diff(energies[ok] - reference)
    for k in range(len(d) - 1):
        if d[k] * d[k + 1] < 0.0:
            extrema.append((float(nus[ok[k]]), float(nus[ok[k + 2]])))
    return SweepResult(
        kind=kind,
        units=units,
        n=n,
        nu=nus,
        energy=energies,
        status=status,
        reference_energy=reference,
        extrema=extrema,
    )


def linear_exact_eigensolve(nu, n: int, units: Units = LINEAR_UNITS) -> float:
    """Exact level of the split linear potential via Airy matching at x = 0.

    Each branch solution is Ai(lambda |x| - E/E0) with the branch scalings
    lambda = (2 m g / hbar^2)^(1/3), E0 = (hbar^2 g^2 / 2m)^(1/3); matching
    value and slope at the origin gives the eigencondition

        D(E) = lam_R Ai(-eL) Ai'(-eR) + lam_L Ai'(-eL) Ai(-eR) = 0

    with eL = E/E0_left, eR = E/E0_right.  The level with n nodes lies
    between the n-th and (n+1)-th smallest hard-wall thresholds |a_k| E0 of
    the two branches, which brackets the root; an exactly degenerate pair of
    thresholds is itself the eigenvalue (a node sits at the origin).
    """
    nu_f = float(nu)
    if not nu_f > 0.5:
        raise ShearOutOfRangeError(f"exact linear solver requires nu > 1/2, got {nu}")
    if n < 0:
        raise ValueError(f"node count must be >= 0, got {n}")
    hbar2_2m = units.hbar**2 / (2.0 * units.mass)
    g_right = units.kappa * nu_f
    g_left = g_right / (2.0 * nu_f - 1.0)
    lam_l = (g_left / hbar2_2m) ** (1.0 / 3.0)
    lam_r = (g_right / hbar2_2m) ** (1.0 / 3.0)
    e0_l = (hbar2_2m * g_left**2) ** (1.0 / 3.0)
    e0_r = (hbar2_2m * g_right**2) ** (1.0 / 3.0)

    def mismatch(energy: float) -> float:
        ai_l, aip_l = airy_ai(-energy / e0_l)
        ai_r, aip_r = airy_ai(-energy / e0_r)
        return lam_r * ai_l * aip_r + lam_l * aip_l * ai_r

    k_max = n + 2
    thresholds = sorted(
        [-airy_zero(k).value * e0_l for k in range(1, k_max + 1)]
        + [-airy_zero(k).value * e0_r for k in range(1, k_max + 1)]
    )
    if n == 0:
        lo, hi = 1e-8 * thresholds[0], thresholds[0]
    else:
        lo, hi = thresholds[n - 1], thresholds[n]
    if hi - lo < 1e-12 * hi:
        # degenerate thresholds: one level of each branch coincides and the
        # common value is the eigenvalue (node exactly at the origin)
        return 0.5 * (lo + hi)
    pad = 1e-9 * (hi - lo)
    a, b = lo + pad, hi - pad
    fa, fb = mismatch(a), mismatch(b)
    if fa * fb > 0.0:
        # endpoint sits numerically on a zero of one Ai factor; walk inward
        for frac in (1e-6, 1e-4, 1e-2):
            a2, b2 = lo + frac * (hi - lo), hi - frac * (hi - lo)
            fa, fb = mismatch(a2), mismatch(b2)
            if fa * fb < 0.0:
                a, b = a2, b2
                break
        else:
            raise ConvergenceFailureError(
                f"no sign change of the Airy matching condition in [{lo:.9g}, {hi:.9g}]"
            )
    return brentq(mismatch, a, b, xtol=1e-15 * hi, rtol=1e-14)
