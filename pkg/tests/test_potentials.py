"""Potential families: branch formulas, turning points, invariants."""
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sheared_spectra.errors import NonPositiveEnergyError, ShearOutOfRangeError
from sheared_spectra.potentials import (
    Model,
    ModelKind,
    Units,
    evaluate,
    harmonic_model,
    linear_model,
    turning_points,
)

UNIT_KAPPA = Units(hbar=1.0, mass=1.0, kappa=1.0)

nu_values = st.floats(min_value=0.51, max_value=1.0, allow_nan=False)


def test_harmonic_reduces_to_symmetric_at_nu_one():
    m = Model(ModelKind.SPLIT_HARMONIC, UNIT_KAPPA, 1.0)
    assert evaluate(m, 2.0) == 4.0
    assert evaluate(m, -2.0) == 4.0


def test_linear_reduces_to_wedge_at_nu_one():
    m = Model(ModelKind.SPLIT_LINEAR, UNIT_KAPPA, 1.0)
    assert evaluate(m, -3.0) == 3.0
    assert evaluate(m, 3.0) == 3.0


def test_harmonic_left_branch_direct_substitution():
    # kappa nu^2 x^2/(2 nu - 1)^2 at nu=0.6, x=-1: 0.36/0.04 = 9
    m = Model(ModelKind.SPLIT_HARMONIC, UNIT_KAPPA, 0.6)
    assert evaluate(m, -1.0) == pytest.approx(9.0, rel=1e-14)


def test_evaluate_vectorized_matches_scalar():
    m = Model(ModelKind.SPLIT_LINEAR, UNIT_KAPPA, 0.7)
    xs = np.linspace(-2.0, 2.0, 11)
    vec = evaluate(m, xs)
    assert vec.shape == xs.shape
    for x, v in zip(xs, vec):
        assert v == evaluate(m, float(x))


def test_origin_is_exactly_zero():
    for kind in ModelKind:
        m = Model(kind, UNIT_KAPPA, 0.8)
        assert evaluate(m, 0.0) == 0.0
        assert evaluate(m, -0.0) == 0.0


def test_turning_points_symmetric_cases():
    tp = turning_points(Model(ModelKind.SPLIT_HARMONIC, UNIT_KAPPA, 1.0), 1.0)
    assert tp.x_minus == pytest.approx(-1.0) and tp.x_plus == pytest.approx(1.0)
    tp = turning_points(Model(ModelKind.SPLIT_LINEAR, UNIT_KAPPA, 1.0), 2.0)
    assert tp.x_minus == pytest.approx(-2.0) and tp.x_plus == pytest.approx(2.0)


def test_turning_points_sheared_harmonic():
    # solve kappa nu^2 x^2 = E and the left analogue by hand at nu=3/4
    tp = turning_points(Model(ModelKind.SPLIT_HARMONIC, UNIT_KAPPA, 0.75), 1.0)
    assert tp.x_plus == pytest.approx(1.0 / 0.75, rel=1e-14)
    assert tp.x_minus == pytest.approx(-(2 * 0.75 - 1) / 0.75, rel=1e-14)
    assert tp.distance == pytest.approx(2.0, rel=1e-14)


def test_turning_points_require_positive_energy():
    m = harmonic_model(0.8)
    with pytest.raises(NonPositiveEnergyError):
        turning_points(m, 0.0)
    with pytest.raises(NonPositiveEnergyError):
        turning_points(m, -1.0)


def test_turning_points_bracket_energy():
    m = Model(ModelKind.SPLIT_HARMONIC, UNIT_KAPPA, 0.7)
    tp = turning_points(m, 3.0)
    assert evaluate(m, tp.x_minus) == pytest.approx(3.0, rel=1e-12)
    assert evaluate(m, tp.x_plus) == pytest.approx(3.0, rel=1e-12)


@given(
    kind=st.sampled_from(list(ModelKind)),
    nu1=nu_values,
    nu2=nu_values,
    energy=st.floats(min_value=1e-3, max_value=1e3),
)
@settings(max_examples=200, deadline=None)
def test_turning_point_distance_is_shear_invariant(kind, nu1, nu2, energy):
    d1 = turning_points(Model(kind, UNIT_KAPPA, nu1), energy).distance
    d2 = turning_points(Model(kind, UNIT_KAPPA, nu2), energy).distance
    assert abs(d1 - d2) < 1e-12 * d1


@given(nu=nu_values)
@settings(max_examples=100, deadline=None)
def test_continuity_at_origin(nu):
    # quadratic branches vanish like x^2; the linear ones like |x| times the
    # branch slope, so the tight bound applies to the harmonic family only
    m = Model(ModelKind.SPLIT_HARMONIC, UNIT_KAPPA, nu)
    assert abs(evaluate(m, 1e-12)) < 1e-20 * m.units.kappa
    assert abs(evaluate(m, -1e-12)) < 1e-20 * m.units.kappa
    lin = Model(ModelKind.SPLIT_LINEAR, UNIT_KAPPA, nu)
    assert abs(evaluate(lin, 1e-12)) < 1e-10 * lin.units.kappa
    assert abs(evaluate(lin, -1e-12)) < 1e-10 * lin.units.kappa


@given(
    kind=st.sampled_from(list(ModelKind)),
    nu=nu_values,
    x=st.floats(min_value=-50.0, max_value=50.0).filter(lambda v: abs(v) > 1e-100),
)
@settings(max_examples=200, deadline=None)
def test_branch_positivity(kind, nu, x):
    assert evaluate(Model(kind, UNIT_KAPPA, nu), x) > 0.0


def test_shear_bounds():
    with pytest.raises(ShearOutOfRangeError):
        harmonic_model(0.5)
    with pytest.raises(ShearOutOfRangeError):
        linear_model(0.49)
    with pytest.raises(ShearOutOfRangeError):
        harmonic_model(Fraction(1, 2))
    with pytest.raises(ShearOutOfRangeError):
        harmonic_model(1.2)
    m = harmonic_model(1.2, allow_nu_above_one=True)
    assert m.nu_float == 1.2


def test_fraction_shear_is_kept_exact():
    m = harmonic_model(Fraction(9, 11))
    assert m.nu == Fraction(9, 11)
    assert m.nu_float == pytest.approx(9 / 11)
    # evaluation converts to float only at call time
    assert evaluate(m, 1.0) == pytest.approx(0.5 * (9 / 11) ** 2)


def test_units_validation_and_omega():
    with pytest.raises(ValueError):
        Units(hbar=0.0)
    with pytest.raises(ValueError):
        Units(kappa=-1.0)
    u = Units(hbar=1.0, mass=2.0, kappa=1.0)
    assert u.omega == pytest.approx(1.0)
    assert math.isfinite(u.linear_energy_scale)
