"""Node extraction, node tracking across shear sweeps, and origin crossings.

As the shear decreases from 1 the turning points move right and the nodes
of every eigenfunction drift right with them; whenever a node passes
through the origin the level energy returns to (or near) its symmetric
value.  detect_crossings turns that mechanism into data: interpolated
shear values nu_star where a node position changes sign, paired with the
energy there.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import NodeCountMismatchError, TrajectoryBreakError
from .potentials import Model, ModelKind, Units, evaluate, turning_points
from .shooting import DEFAULT_CONFIG, EigenSolution, SolverConfig, solve_level

__all__ = [
    "NodeTrajectory",
    "DetectedCrossing",
    "extract_nodes",
    "track_nodes",
    "detect_crossings",
]

_FINE_FACTOR = 16
_MIN_DNU = 1e-4
_DRIFT_SLACK = 4.0  # node_tol multiples a node may move leftward before flagged


@dataclass
class NodeTrajectory:
    """Node positions of one level sampled over a descending shear grid.

    monotonicity_violations records (nu_before, nu_after, node_index) for
    any node that moved left as nu decreased; the rightward drift is an
    empirical observation, so violations are reported rather than raised.
    """

    n: int
    kind: ModelKind
    units: Units
    samples: list[tuple[float, np.ndarray]]
    energies: list[float]
    config: SolverConfig
    monotonicity_violations: list[tuple[float, float, int]] = field(default_factory=list)


@dataclass(frozen=True)
class DetectedCrossing:
    """A node passing through the origin during a shear sweep.

    left_count_before is the number of nodes strictly to the left of the
    crossing node, i.e. its index in ascending position order.
    """

    n: int
    left_count_before: int
    nu_star: float
    energy_at_crossing: float


def _taylor_second_point(y0: float, d0: float, w0: float, dw0: float, h: float) -> float:
    """y(x0 + h) from y, y', y'' = w y and y''' = w' y + w y'."""
    y2 = w0 * y0
    y3 = dw0 * y0 + w0 * d0
    return y0 + h * d0 + 0.5 * h * h * y2 + h**3 / 6.0 * y3


def _refine_node(
    solution: EigenSolution, i: int, fine_factor: int
) -> float:
    """Re-integrate around the sign change at grid interval i on a fine grid."""
    x = solution.grid
    y = solution.values
    h = solution.grid_step
    c = solution.model.units.hbar**2 / (2.0 * solution.model.units.mass)
    lo = max(i - 2, 2)
    hi = min(i + 3, len(x) - 1)
    hf = h / fine_factor
    xf = x[lo] + hf * np.arange(int(round((x[hi] - x[lo]) / hf)) + 1)
    wf = (evaluate(solution.model, xf) - solution.energy) / c
    # seed the fine Numerov with the coarse value and a 5-point slope
    d0 = (y[lo - 2] - 8.0 * y[lo - 1] + 8.0 * y[lo + 1] - y[lo + 2]) / (12.0 * h)
    dw0 = (wf[1] - wf[0]) / hf if len(wf) > 1 else 0.0
    yf = np.empty(len(xf))
    yf[0] = y[lo]
    yf[1] = _taylor_second_point(y[lo], d0, wf[0], dw0, hf)
    f = 1.0 - (hf * hf / 12.0) * wf
    for k in range(1, len(xf) - 1):
        yf[k + 1] = ((12.0 - 10.0 * f[k]) * yf[k] - f[k - 1] * yf[k - 1]) / f[k + 1]
    # one bisection pass over the fine samples, then inverse-linear inside it
    sign_flip = np.where(yf[:-1] * yf[1:] < 0.0)[0]
    if len(sign_flip) == 0:
        # fall back to the coarse estimate
        return float(x[i] - y[i] * h / (y[i + 1] - y[i]))
    target = x[i] - y[i] * h / (y[i + 1] - y[i])
    k = sign_flip[np.argmin(np.abs(xf[sign_flip] - target))]
    return float(xf[k] - yf[k] * hf / (yf[k + 1] - yf[k]))


def extract_nodes(
    solution: EigenSolution, config: SolverConfig = DEFAULT_CONFIG
) -> list[float]:
    """Refined node positions of a solved level.

    Each sign change of the sampled wavefunction is re-integrated on a grid
    fine_factor times finer around the crossing.  Raises
    NodeCountMismatchError if the refined count differs from solution.n.
    """
    y = solution.values
    peak = np.abs(y).max()
    sig = np.abs(y) > 1e-11 * peak
    positions = []
    prev = None
    for i in range(len(y)):
        if not sig[i]:
            continue
        if prev is not None and y[prev] * y[i] < 0.0:
            positions.append(_refine_node(solution, prev, _FINE_FACTOR))
        prev = i
    if len(positions) != solution.n:
        raise NodeCountMismatchError(
            f"refined {len(positions)} nodes for level n={solution.n}"
        )
    tp = turning_points(solution.model, solution.energy)
    bad = [p for p in positions if not tp.x_minus < p < tp.x_plus]
    if bad:
        raise NodeCountMismatchError(
            f"nodes {bad} fall outside the classically allowed region"
        )
    return positions


def _solve_positions(
    kind: ModelKind, units: Units, n: int, nu: float, config: SolverConfig, hint
) -> tuple[np.ndarray, float]:
    sol = solve_level(Model(kind, units, nu), n, config, energy_hint=hint)
    return np.asarray(extract_nodes(sol, config)), sol.energy


def track_nodes(
    kind: ModelKind,
    units: Units,
    n: int,
    nu_grid: Sequence[float],
    config: SolverConfig = DEFAULT_CONFIG,
) -> NodeTrajectory:
    """Follow all n node positions of a level across a descending shear grid.

    Nodes are associated between adjacent shear values by position order
    (counts are equal, so nearest matching is the identity on sorted
    positions); if the largest jump exceeds the continuity threshold the
    sweep bisects in nu, and raises TrajectoryBreakError once steps reach
    the minimum width without restoring continuity.
    """
    nus = [float(v) for v in nu_grid]
    if len(nus) < 2:
        raise ValueError("nu_grid must contain at least two points")
    if any(b >= a for a, b in zip(nus, nus[1:])):
        raise ValueError("nu_grid must be strictly descending")

    samples: list[tuple[float, np.ndarray]] = []
    energies: list[float] = []
    violations: list[tuple[float, float, int]] = []
    node_tol = config.node_tol if config.node_tol is not None else None

    pos, energy = _solve_positions(kind, units, n, nus[0], config, None)
    samples.append((nus[0], pos))
    energies.append(energy)

    threshold = None
    pending = list(nus[1:])
    while pending:
        nu = pending.pop(0)
        nu_prev, pos_prev = samples[-1]
        pos, energy = _solve_positions(kind, units, n, nu, config, energies[-1])
        if n > 0:
            jump = float(np.max(np.abs(pos - pos_prev)))
            if threshold is None:
                threshold = max(5.0 * jump, 1e-6)
            elif jump > threshold:
                if nu_prev - nu > _MIN_DNU:
                    pending.insert(0, nu)
                    pending.insert(0, 0.5 * (nu_prev + nu))
                    continue
                raise TrajectoryBreakError(
                    f"node jump {jump:.3g} exceeds continuity threshold "
                    f"{threshold:.3g} between nu={nu_prev} and nu={nu}"
                )
            tol = node_tol if node_tol is not None else 0.0
            for k in range(n):
                if pos[k] < pos_prev[k] - _DRIFT_SLACK * max(tol, 1e-7):
                    violations.append((nu_prev, nu, k))
        samples.append((nu, pos))
        energies.append(energy)

    return NodeTrajectory(
        n=n,
        kind=kind,
        units=units,
        samples=samples,
        energies=energies,
        config=config,
        monotonicity_violations=violations,
    )


def detect_crossings(trajectory: NodeTrajectory) -> list[DetectedCrossing]:
    """Origin crossings of a node trajectory, sorted by descending nu_star.

    Each sign change of a node position between adjacent shear samples is
    interpolated by a secant on position versus nu and polished with two
    refinement solves.  A node that already sits at the origin at the first
    sample (within node tolerance) is reported as a crossing there.
    """
    if trajectory.n == 0:
        return []
    cfg = trajectory.config
    samples = trajectory.samples
    node_tol = cfg.node_tol if cfg.node_tol is not None else _first_node_tol(trajectory)

    crossings: list[DetectedCrossing] = []
    handled_at_start: set[int] = set()
    nu0, pos0 = samples[0]
    for k in range(trajectory.n):
        if abs(pos0[k]) < node_tol:
            crossings.append(
                DetectedCrossing(
                    n=trajectory.n,
                    left_count_before=k,
                    nu_star=nu0,
                    energy_at_crossing=trajectory.energies[0],
                )
            )
            handled_at_start.add(k)

    for (nu_a, pos_a), (nu_b, pos_b), e_b in zip(
        samples, samples[1:], trajectory.energies[1:]
    ):
        for k in range(trajectory.n):
            pa, pb = pos_a[k], pos_b[k]
            if k in handled_at_start and nu_a == samples[0][0]:
                continue
            if pa < 0.0 <= pb or (pa > 0.0 >= pb):
                nu_star, energy = _refine_crossing(trajectory, k, nu_a, pa, nu_b, pb)
                if energy is None:
                    energy = e_b
                crossings.append(
                    DetectedCrossing(
                        n=trajectory.n,
                        left_count_before=k,
                        nu_star=nu_star,
                        energy_at_crossing=energy,
                    )
                )
    crossings.sort(key=lambda c: -c.nu_star)
    return crossings


def _first_node_tol(trajectory: NodeTrajectory) -> float:
    model = Model(trajectory.kind, trajectory.units, trajectory.samples[0][0])
    sol = solve_level(model, trajectory.n, trajectory.config)
    return 2.0 * sol.grid_step


def _refine_crossing(
    trajectory: NodeTrajectory, k: int, nu_a: float, pa: float, nu_b: float, pb: float
) -> tuple[float, float | None]:
    cfg = trajectory.config
    kind, units = trajectory.kind, trajectory.units
    energy = None
    hint = trajectory.energies[0]
    x1, f1, x2, f2 = nu_a, pa, nu_b, pb
    nu_star = x2 - f2 * (x2 - x1) / (f2 - f1)
    for _ in range(2):
        nu_star = min(max(nu_star, min(nu_a, nu_b)), max(nu_a, nu_b))
        try:
            pos, energy = _solve_positions(kind, units, trajectory.n, nu_star, cfg, hint)
        except Exception:
            break
        hint = energy
        f_new = pos[k]
        x1, f1, x2, f2 = x2, f2, nu_star, f_new
        if f2 == f1:
            break
        nu_star = x2 - f2 * (x2 - x1) / (f2 - f1)
        if abs(f_new) < 1e-12:
            nu_star = x2
            break
    return float(nu_star), energy
