"""Sheared one-dimensional potentials and their classical turning points.

Two families are provided, both continuous at the origin with V(0) = 0:

* split harmonic:  V(x) = kappa nu^2 x^2 / (2 nu - 1)^2  for x < 0,
                   V(x) = kappa nu^2 x^2                 for x >= 0
* split linear:    V(x) = -kappa nu x / (2 nu - 1)       for x < 0,
                   V(x) = kappa nu x                     for x >= 0

The shear parameter nu deforms the left branch while keeping the distance
between the classical turning points at fixed energy independent of nu
(2 sqrt(E/kappa) for the harmonic family, 2 E/kappa for the linear one).
nu = 1 is the symmetric potential; nu -> 1/2 is the hard-wall limit, where
the left branch becomes infinitely steep.  Values nu <= 1/2 are rejected.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from numbers import Rational

import numpy as np

from .errors import NonPositiveEnergyError, ShearOutOfRangeError

Shear = float | Fraction


class ModelKind(enum.Enum):
    SPLIT_HARMONIC = "harmonic"
    SPLIT_LINEAR = "linear"


@dataclass(frozen=True)
class Units:
    """Physical constants of a model.

    kappa is the stiffness of the right branch: energy/length^2 for the
    harmonic family, energy/length for the linear one.
    """

    hbar: float = 1.0
    mass: float = 1.0
    kappa: float = 1.0

    def __post_init__(self):
        for name in ("hbar", "mass", "kappa"):
            v = getattr(self, name)
            if not (v > 0.0 and math.isfinite(v)):
                raise ValueError(f"{name} must be finite and positive, got {v!r}")

    @property
    def omega(self) -> float:
        """Harmonic angular frequency sqrt(2 kappa / m)."""
        return math.sqrt(2.0 * self.kappa / self.mass)

    @property
    def linear_energy_scale(self) -> float:
        """Natural energy unit (hbar^2 kappa^2 / m)^(1/3) of the linear family."""
        return (self.hbar**2 * self.kappa**2 / self.mass) ** (1.0 / 3.0)


# Defaults chosen so the closed-form spectra read off directly:
# omega = 1 for the harmonic model, (hbar^2 kappa^2 / m)^(1/3) = 1 for the
# linear one.
HARMONIC_UNITS = Units(hbar=1.0, mass=1.0, kappa=0.5)
LINEAR_UNITS = Units(hbar=1.0, mass=1.0, kappa=1.0)


@dataclass(frozen=True)
class Model:
    """A sheared potential: family, units, and shear parameter.

    nu may be a Fraction, in which case it is kept exact and only converted
    to floating point when the potential is evaluated.  nu must exceed 1/2;
    values above 1 are rejected unless allow_nu_above_one is set.
    """

    kind: ModelKind
    units: Units = field(default_factory=Units)
    nu: Shear = 1.0
    allow_nu_above_one: bool = False

    def __post_init__(self):
        nu = self.nu
        if isinstance(nu, Rational):
            ok_low = nu > Fraction(1, 2)
            ok_high = self.allow_nu_above_one or nu <= 1
        else:
            nu = float(nu)
            if not math.isfinite(nu):
                raise ShearOutOfRangeError(f"nu must be finite, got {nu!r}")
            ok_low = nu > 0.5
            ok_high = self.allow_nu_above_one or nu <= 1.0
        if not ok_low:
            raise ShearOutOfRangeError(
                f"nu must exceed 1/2 (left branch coefficient diverges), got {self.nu}"
            )
        if not ok_high:
            raise ShearOutOfRangeError(
                f"nu={self.nu} > 1; pass allow_nu_above_one=True to permit it"
            )

    @property
    def nu_float(self) -> float:
        return float(self.nu)

    def with_nu(self, nu: Shear) -> "Model":
        return replace(self, nu=nu)


def harmonic_model(nu: Shear = 1.0, units: Units = HARMONIC_UNITS, **kw) -> Model:
    return Model(ModelKind.SPLIT_HARMONIC, units, nu, **kw)


def linear_model(nu: Shear = 1.0, units: Units = LINEAR_UNITS, **kw) -> Model:
    return Model(ModelKind.SPLIT_LINEAR, units, nu, **kw)


@dataclass(frozen=True)
class TurningPoints:
    """Classical turning points x_minus < 0 < x_plus at some energy."""

    x_minus: float
    x_plus: float

    @property
    def distance(self) -> float:
        return self.x_plus - self.x_minus


def evaluate(model: Model, x):
    """Evaluate V(x); accepts a scalar or an ndarray.

    V(0) = 0 exactly and both branches are continuous at the origin.
    """
    nu = model.nu_float
    kappa = model.units.kappa
    xs = np.asarray(x, dtype=float)
    if model.kind is ModelKind.SPLIT_HARMONIC:
        right = kappa * nu * nu * xs * xs
        left = right / (2.0 * nu - 1.0) ** 2
    else:
        right = kappa * nu * xs
        left = -right / (2.0 * nu - 1.0)
    out = np.where(xs < 0.0, left, right)
    if np.isscalar(x) or np.ndim(x) == 0:
        return float(out)
    return out


def turning_points(model: Model, energy: float) -> TurningPoints:
    """Solve V(x) = E on each branch analytically."""
    if not energy > 0.0:
        raise NonPositiveEnergyError(f"turning points require E > 0, got {energy!r}")
    nu = model.nu_float
    kappa = model.units.kappa
    if model.kind is ModelKind.SPLIT_HARMONIC:
        x_plus = math.sqrt(energy / kappa) / nu
        x_minus = -(2.0 * nu - 1.0) * math.sqrt(energy / kappa) / nu
    else:
        x_plus = energy / (kappa * nu)
        x_minus = -(2.0 * nu - 1.0) * energy / (kappa * nu)
    return TurningPoints(x_minus=x_minus, x_plus=x_plus)


def branch_slopes(model: Model) -> tuple[float, float]:
    """|V'| of each branch: (left, right).

    For the harmonic family these are the local slopes at the turning points
    of unit energy scaled by sqrt(E/kappa); callers that need the slope at a
    specific energy should use turning_point_slopes.
    """
    nu = model.nu_float
    kappa = model.units.kappa
    if model.kind is ModelKind.SPLIT_LINEAR:
        g_right = kappa * nu
        g_left = g_right / (2.0 * nu - 1.0)
        return g_left, g_right
    raise ValueError("branch_slopes is only defined for the linear family")


def turning_point_slopes(model: Model, energy: float) -> tuple[float, float]:
    """|V'(x_-)| and |V'(x_+)| at the turning points for the given energy."""
    nu = model.nu_float
    kappa = model.units.kappa
    if model.kind is ModelKind.SPLIT_HARMONIC:
        g_right = 2.0 * nu * math.sqrt(kappa * energy)
        g_left = g_right / (2.0 * nu - 1.0)
    else:
        g_right = kappa * nu
        g_left = g_right / (2.0 * nu - 1.0)
    return g_left, g_right
