"""Closed-form spectra and node-at-origin crossing values.

For the split harmonic potential the two half-line problems (hard wall at the
origin, one branch on each side) have spectra

    E(left,  k) = hbar omega nu/(2 nu - 1) (2k + 3/2),
    E(right, k) = hbar omega nu            (2k + 3/2),     k = 0, 1, ...

Equating a left and a right level gives the shear values nu_ij at which a
full-line eigenfunction has a node exactly at the origin,

    nu_ij = (2(i+j) + 3) / (4j + 3),       E = hbar omega (i + j + 3/2),

exact rationals, with total node count n = i + j + 1.  For the split linear
potential the half-line spectra are fixed by the negative-axis zeros a_k of
Ai, and

    nu_ij = (1 + (|a_i|/|a_j|)^(3/2)) / 2,
    E_ij  = (hbar^2 kappa^2 / m)^(1/3) (|a_i|^(3/2) + |a_j|^(3/2))^(2/3) / 2,

with node count n = i + j - 1.  Here both a_i and a_j are negative, so the
ratio is computed from absolute values.  In the large-index limit the
crossing energy depends on i and j only through their sum:

    E ~ (hbar^2 kappa^2 / m)^(1/3) (6 pi)^(2/3) / 8 * (2i + 2j - 1)^(2/3).
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from .airy import airy_zero
from .errors import IndexOutOfRangeError, ShearOutOfRangeError
from .potentials import HARMONIC_UNITS, LINEAR_UNITS, Units

__all__ = [
    "Branch",
    "Endpoint",
    "CrossingEvent",
    "HalfLineLevel",
    "ho_endpoint_spectrum",
    "ho_half_line_energy",
    "ho_crossings",
    "linear_half_line_energy",
    "linear_crossings",
    "semiclassical_energy",
    "ZERO_SEED_COEFFICIENT",
]

# Coefficient of the large-index law |a_i|^(3/2) ~ c (i - 1/4) for the Airy
# zeros.  3 pi / 2 is the standard value; the alternative reading pi is kept
# around so the verification suite can show it is numerically untenable.
ZERO_SEED_COEFFICIENT = 1.5 * math.pi
ALT_ZERO_SEED_COEFFICIENT = math.pi


class Branch(enum.Enum):
    LEFT = "left"
    RIGHT = "right"


class Endpoint(enum.Enum):
    NU_ONE = "nu=1"
    NU_HALF = "nu=1/2"


@dataclass(frozen=True)
class CrossingEvent:
    """Shear value nu_ij at which a node sits exactly at the origin.

    i and j index the left and right half-line levels that become degenerate
    there (left node count and right zero index); n is the total node count
    of the full-line eigenfunction.  nu is an exact Fraction for the harmonic
    family and a float for the linear one.
    """

    i: int
    j: int
    nu: Fraction | float
    energy: float
    n: int

    @property
    def nu_float(self) -> float:
        return float(self.nu)


@dataclass(frozen=True)
class HalfLineLevel:
    """One eigenvalue of a single-branch problem with a hard wall at x=0."""

    branch: Branch
    index: int
    energy: float

    def __post_init__(self):
        if not self.energy > 0.0:
            raise ValueError(f"half-line energy must be positive, got {self.energy}")


def _check_shear(nu) -> float:
    nu_f = float(nu)
    if not nu_f > 0.5:
        raise ShearOutOfRangeError(f"half-line spectra require nu > 1/2, got {nu}")
    return nu_f


def ho_endpoint_spectrum(n: int, which: Endpoint, units: Units = HARMONIC_UNITS) -> float:
    """Harmonic eigenvalue at the symmetric (nu=1) or hard-wall (nu=1/2) endpoint.

    nu=1:  hbar omega (n + 1/2)
    nu=1/2: hard wall at the origin, hbar omega / 2 (2n + 3/2)
    """
    if n < 0:
        raise IndexOutOfRangeError(f"level index must be >= 0, got {n}")
    hw = units.hbar * units.omega
    if which is Endpoint.NU_ONE:
        return hw * (n + 0.5)
    return 0.5 * hw * (2 * n + 1.5)


def ho_half_line_energy(
    branch: Branch, k: int, nu, units: Units = HARMONIC_UNITS
) -> float:
    """Half-line harmonic level: hbar omega_branch (2k + 3/2), k = 0, 1, ...

    The wall at the origin keeps only the odd levels of the corresponding
    full oscillator, whose frequency is omega nu/(2 nu - 1) on the left
    branch and omega nu on the right one.
    """
    if k < 0:
        raise IndexOutOfRangeError(f"half-line index must be >= 0, got {k}")
    nu_f = _check_shear(nu)
    hw = units.hbar * units.omega
    factor = nu_f / (2.0 * nu_f - 1.0) if branch is Branch.LEFT else nu_f
    return hw * factor * (2 * k + 1.5)


def half_line_level(
    branch: Branch, k: int, nu, units: Units = HARMONIC_UNITS
) -> HalfLineLevel:
    return HalfLineLevel(branch, k, ho_half_line_energy(branch, k, nu, units))


def ho_crossings(n: int, units: Units = HARMONIC_UNITS) -> list[CrossingEvent]:
    """All node-at-origin events of harmonic level n, sorted by descending nu.

    Pairs (i, j) with j >= i >= 0 and i + j + 1 = n; nu_ij is returned as an
    exact Fraction and every event shares the energy hbar omega (n + 1/2).
    """
    if n < 1:
        raise IndexOutOfRangeError(f"crossings exist only for n >= 1, got {n}")
    energy = units.hbar * units.omega * (n + 0.5)
    events = []
    for i in range((n - 1) // 2, -1, -1):
        j = n - 1 - i
        nu = Fraction(2 * (i + j) + 3, 4 * j + 3)
        events.append(CrossingEvent(i=i, j=j, nu=nu, energy=energy, n=n))
    return events


def linear_half_line_energy(
    branch: Branch, k: int, nu, units: Units = LINEAR_UNITS
) -> float:
    """Half-line linear level fixed by the k-th Airy zero, k = 1, 2, ...

    E = -a_k / 2^(1/3) * (hbar^2 kappa^2/m)^(1/3) * s^(2/3) with s the branch
    slope factor nu/(2 nu - 1) (left) or nu (right).
    """
    if k < 1:
        raise IndexOutOfRangeError(f"linear half-line index must be >= 1, got {k}")
    nu_f = _check_shear(nu)
    scale = units.linear_energy_scale
    slope_factor = nu_f / (2.0 * nu_f - 1.0) if branch is Branch.LEFT else nu_f
    return -airy_zero(k).value / 2.0 ** (1.0 / 3.0) * scale * slope_factor ** (2.0 / 3.0)


def linear_crossings(i: int, j: int, units: Units = LINEAR_UNITS) -> CrossingEvent:
    """Node-at-origin event of the split linear potential for indices i <= j."""
    if not 1 <= i <= j:
        raise IndexOutOfRangeError(f"need 1 <= i <= j, got i={i}, j={j}")
    ai = abs(airy_zero(i).value)
    aj = abs(airy_zero(j).value)
    nu = 0.5 * (1.0 + (ai / aj) ** 1.5)
    energy = units.linear_energy_scale * (ai**1.5 + aj**1.5) ** (2.0 / 3.0) / 2.0
    return CrossingEvent(i=i, j=j, nu=nu, energy=energy, n=i + j - 1)


def semiclassical_energy(
    i: int,
    j: int,
    units: Units = LINEAR_UNITS,
    zero_coefficient: float = ZERO_SEED_COEFFICIENT,
) -> float:
    """Large-index crossing energy of the linear family.

    Depends on i and j only through their sum.  With the standard zero
    coefficient 3 pi/2 the prefactor is (6 pi)^(2/3)/8; zero_coefficient is
    exposed so alternative readings of the zero asymptotics can be compared
    numerically.
    """
    if i < 1 or j < 1:
        raise IndexOutOfRangeError(f"semiclassical indices must be >= 1, got {i}, {j}")
    s = i + j
    # (c (i - 1/4))^... summed over both sides: |a_i|^(3/2)+|a_j|^(3/2)
    # ~ c (i + j - 1/2) = c (2s - 1)/2.
    return units.linear_energy_scale * (zero_coefficient * (2 * s - 1) / 2.0) ** (
        2.0 / 3.0
    ) / 2.0


def table_rows(max_sum: int = 11, units: Units = LINEAR_UNITS) -> list[CrossingEvent]:
    """Linear crossing events ordered by (i+j, i), for i+j = 2 .. max_sum."""
    rows = []
    for s in range(2, max_sum + 1):
        for i in range(1, s // 2 + 1):
            rows.append(linear_crossings(i, s - i, units))
    return rows
