"""Shooting solver: discriminant, level solving, sweeps, exact linear oracle."""
import math
from fractions import Fraction

import numpy as np
import pytest

from sheared_spectra.errors import (
    IntegrationOverflowError,
    ShearOutOfRangeError,
)
from sheared_spectra.potentials import (
    HARMONIC_UNITS,
    LINEAR_UNITS,
    ModelKind,
    harmonic_model,
    linear_model,
    turning_points,
)
from sheared_spectra.shooting import (
    SolverConfig,
    _numerov,
    linear_exact_eigensolve,
    match_discriminant,
    solve_level,
    spectrum_sweep,
)


class TestDiscriminant:
    def test_vanishes_at_harmonic_eigenvalue(self):
        assert abs(match_discriminant(harmonic_model(1.0), 0.5)) < 1e-6

    def test_bounded_away_off_eigenvalue(self):
        assert abs(match_discriminant(harmonic_model(1.0), 0.7)) > 1e-3

    def test_vanishes_at_linear_table_value(self):
        assert abs(match_discriminant(linear_model(1.0), 1.855757081)) < 1e-6

    def test_shear_guard(self):
        with pytest.raises(ShearOutOfRangeError):
            match_discriminant(harmonic_model(0.5005), 1.0)
        with pytest.raises(ValueError):
            match_discriminant(harmonic_model(1.0), -1.0)


class TestSolveLevel:
    def test_symmetric_harmonic_level_three(self):
        sol = solve_level(harmonic_model(1.0), 3)
        assert sol.energy == pytest.approx(3.5, rel=1e-8)
        assert len(sol.nodes) == 3

    def test_crossing_shear_level_four(self):
        sol = solve_level(harmonic_model(Fraction(9, 11)), 4)
        assert sol.energy == pytest.approx(4.5, rel=1e-8)
        assert min(abs(x) for x in sol.nodes) < 2.0 * sol.grid_step

    def test_linear_crossing_level_two(self):
        sol = solve_level(linear_model(0.7162760442), 2)
        assert sol.energy == pytest.approx(2.597461596, rel=1e-7)

    def test_interlacing_harmonic(self):
        cfg = SolverConfig()
        energies = [solve_level(harmonic_model(0.8), n, cfg).energy for n in range(6)]
        assert all(a < b for a, b in zip(energies, energies[1:]))

    def test_interlacing_linear(self):
        energies = [solve_level(linear_model(0.66), n).energy for n in range(5)]
        assert all(a < b for a, b in zip(energies, energies[1:]))

    def test_node_count_matches_request(self):
        for n in (0, 2, 5):
            sol = solve_level(harmonic_model(0.73), n)
            signs = np.sign(sol.values[np.abs(sol.values) > 1e-9])
            assert int(np.count_nonzero(signs[1:] * signs[:-1] < 0)) == n

    def test_nodes_confined_between_turning_points(self):
        sol = solve_level(harmonic_model(0.62), 4)
        tp = turning_points(sol.model, sol.energy)
        assert all(tp.x_minus < x < tp.x_plus for x in sol.nodes)

    def test_unit_max_normalization_and_decay(self):
        sol = solve_level(harmonic_model(1.0), 2)
        assert np.abs(sol.values).max() == pytest.approx(1.0)
        tp = turning_points(sol.model, sol.energy)
        ell = 0.8
        outside = sol.grid > tp.x_plus + ell
        tail = np.abs(sol.values[outside])
        assert np.all(np.diff(tail) < 0.0)
        outside_left = sol.grid < tp.x_minus - ell
        tail_left = np.abs(sol.values[outside_left])
        assert np.all(np.diff(tail_left) > 0.0)

    def test_energy_hint_speeds_continuation(self):
        sol = solve_level(harmonic_model(0.9), 2, energy_hint=2.52)
        assert sol.energy == pytest.approx(
            solve_level(harmonic_model(0.9), 2).energy, rel=1e-10
        )

    def test_grid_refinement_is_fourth_order(self):
        results = []
        for h in (0.08, 0.04, 0.02):
            cfg = SolverConfig(grid_step=h)
            results.append(solve_level(harmonic_model(1.0), 3, cfg).energy)
        ratio = (results[0] - results[1]) / (results[1] - results[2])
        assert 12.0 < ratio < 20.0

    def test_validation(self):
        with pytest.raises(ValueError):
            solve_level(harmonic_model(1.0), -1)
        with pytest.raises(ShearOutOfRangeError):
            solve_level(harmonic_model(0.5004), 1)


class TestNumerovGuard:
    def test_non_finite_integration_is_reported(self):
        w = np.full(80, 1.0)
        w[40] = np.nan
        with pytest.raises(IntegrationOverflowError):
            _numerov(w, 0.1)

    def test_renormalization_keeps_values_finite(self):
        # growth of ~10 per step over 5000 steps would reach 1e(step count)
        # without the periodic rescaling
        w = np.full(5000, 400.0)
        y = _numerov(w, 0.05)
        assert np.isfinite(y).all()


class TestSpectrumSweep:
    def test_level_one_returns_to_symmetric_value_only_at_endpoint(self):
        # the single crossing family of n=1 sits at nu=1 itself; on this
        # range E_1(nu) stays measurably away from 1.5 everywhere else
        # (it dips slightly below before climbing towards the wall value)
        nus = np.round(np.arange(1.0, 0.7 - 1e-9, -0.02), 10)
        sweep = spectrum_sweep(ModelKind.SPLIT_HARMONIC, HARMONIC_UNITS, 1, nus)
        assert sweep.energy[0] == pytest.approx(1.5, rel=1e-8)
        assert np.all(np.abs(sweep.energy[1:] - 1.5) > 1e-6)
        assert all(s is None for s in sweep.status)

    def test_level_four_oscillation_zeros(self):
        nus = np.round(np.arange(1.0, 0.55 - 1e-9, -0.01), 10)
        sweep = spectrum_sweep(ModelKind.SPLIT_HARMONIC, HARMONIC_UNITS, 4, nus)
        offset = sweep.energy - 4.5
        sign_changes = np.where(offset[:-1] * offset[1:] < 0.0)[0]
        crossing_nus = nus[sign_changes]
        assert len(crossing_nus) >= 2
        assert any(abs(v - 9.0 / 11.0) < 0.02 for v in crossing_nus)
        assert any(abs(v - 3.0 / 5.0) < 0.02 for v in crossing_nus)
        assert len(sweep.extrema) >= 2

    def test_hard_wall_limit_from_below(self):
        sweep = spectrum_sweep(
            ModelKind.SPLIT_HARMONIC, HARMONIC_UNITS, 2, [0.52, 0.505]
        )
        wall = 0.5 * (2 * 2 + 1.5)
        # approach is from below and slow (boundary-layer scaling in nu - 1/2)
        assert np.all(sweep.energy < wall)
        assert sweep.energy[1] > sweep.energy[0]
        assert wall - sweep.energy[-1] < 0.2

    def test_reference_energy_linear(self):
        sweep = spectrum_sweep(ModelKind.SPLIT_LINEAR, LINEAR_UNITS, 1, [1.0, 0.9])
        assert sweep.reference_energy == pytest.approx(1.855757081, rel=1e-7)

    def test_per_point_failure_recorded(self, monkeypatch):
        import sheared_spectra.shooting as sh

        real = sh.solve_level

        def flaky(model, n, config=sh.DEFAULT_CONFIG, energy_hint=None):
            if abs(model.nu_float - 0.9) < 1e-12:
                raise sh.ConvergenceFailureError("synthetic failure")
            return real(model, n, config, energy_hint)

        monkeypatch.setattr(sh, "solve_level", flaky)
        sweep = sh.spectrum_sweep(
            ModelKind.SPLIT_HARMONIC, HARMONIC_UNITS, 1, [1.0, 0.9, 0.8]
        )
        assert sweep.status[1] is not None and "synthetic" in sweep.status[1]
        assert math.isnan(sweep.energy[1])
        assert sweep.status[0] is None and sweep.status[2] is None

    def test_grid_validation(self):
        with pytest.raises(ValueError):
            spectrum_sweep(ModelKind.SPLIT_HARMONIC, HARMONIC_UNITS, 1, [0.8, 0.9])
        with pytest.raises(ShearOutOfRangeError):
            spectrum_sweep(ModelKind.SPLIT_HARMONIC, HARMONIC_UNITS, 1, [1.0, 0.5])


class TestLinearExactSolver:
    @pytest.mark.parametrize(
        "nu,n,ref",
        [
            (1.0, 1, 1.855757081),
            (0.7162760442, 2, 2.597461596),
            (1.0, 3, 3.244607624),
        ],
    )
    def test_reference_levels(self, nu, n, ref):
        assert linear_exact_eigensolve(nu, n) == pytest.approx(ref, rel=1e-9)

    def test_levels_increase(self):
        es = [linear_exact_eigensolve(0.8, n) for n in range(7)]
        assert all(a < b for a, b in zip(es, es[1:]))

    def test_shear_guard(self):
        with pytest.raises(ShearOutOfRangeError):
            linear_exact_eigensolve(0.5, 1)

    def test_matches_shooting_on_sample(self):
        for nu in (0.95, 0.64):
            for n in (0, 3):
                exact = linear_exact_eigensolve(nu, n)
                shot = solve_level(linear_model(nu), n).energy
                assert shot == pytest.approx(exact, rel=1e-7)
