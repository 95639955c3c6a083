"""Airy function Ai, its derivative, and the zeros on the negative axis.

Everything here is evaluated from scratch in three regimes:

* ``|z| <= 4.0`` (and ``z <= 2.5`` on the positive side): the Maclaurin
  series of the two standard solutions of y'' = z y, summed in float64.
  Term cancellation is mild in this window, so the result is accurate to
  a few ulp.
* mid range up to ``|z| = Z_SWITCH = 9.0``: the same series summed with
  50-digit ``decimal`` arithmetic.  The series is entire, so the only
  error is the final rounding to float64; this absorbs the heavy
  cancellation that makes the float64 series useless beyond ``|z| ~ 6``.
* ``|z| > Z_SWITCH``: Poincare asymptotic expansions, truncated at the
  smallest term (exponentially decaying form for z >> 0, the oscillatory
  cosine/sine form for z << 0).  At the switch point the optimal
  truncation error is ~1e-15 relative to the local envelope, so the two
  representations overlap to better than 14 digits; the overlap is
  asserted by the test suite.

Accuracy statements for the oscillatory region are relative to the local
envelope |Ai| + |Ai'|/(1+|z|)^(1/2); arbitrarily close to a zero of Ai no
fixed-precision evaluation can bound the pure relative error.

Zeros a_1 > a_2 > ... (all negative) are found by Newton iteration from
the McMahon-type asymptotic seed a_i ~ -[(3 pi / 2)(i - 1/4)]^(2/3) and
memoized per process.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from functools import lru_cache

from .errors import ConvergenceFailureError, IndexOutOfRangeError, OutOfRangeError

__all__ = ["AiryZero", "airy_ai", "airy_zero", "Z_SWITCH", "MAX_ZERO_INDEX", "Z_MAX"]

Z_SWITCH = 9.0
Z_MAX = 200.0
MAX_ZERO_INDEX = 50

# Window where plain float64 series summation keeps ~13 significant digits.
# The positive side is narrower: there the series computes an exponentially
# small result from exponentially growing terms.
_FLOAT_SERIES_NEG = -4.0
_FLOAT_SERIES_POS = 2.5
_SERIES_PREC = 50
_SERIES_TINY = Decimal("1e-44")

# Ai(0) = 3^(-2/3)/Gamma(2/3), Ai'(0) = -3^(-1/3)/Gamma(1/3).
_AI0 = 3.0 ** (-2.0 / 3.0) / math.gamma(2.0 / 3.0)
_AIP0 = -(3.0 ** (-1.0 / 3.0)) / math.gamma(1.0 / 3.0)
_AI0_D = Decimal("0.355028053887817239260063186004183176397979174199177240583327")
_AIP0_D = Decimal("-0.258819403792806798405183560189203963479091138354934582210002")

_SQRT_PI = math.sqrt(math.pi)


def _asymptotic_coefficients(count: int = 48) -> tuple[list[float], list[float]]:
    u = [1.0]
    v = [1.0]
    for k in range(1, count):
        uk = u[-1] * (6 * k - 5) * (6 * k - 3) * (6 * k - 1) / (216.0 * k * (2 * k - 1))
        u.append(uk)
        v.append(uk * (6 * k + 1) / (1.0 - 6 * k))
    return u, v


_U, _V = _asymptotic_coefficients()


def _maclaurin_float(z: float) -> tuple[float, float]:
    z3 = z * z * z
    t = 1.0
    f = t
    s = z
    g = s
    u = 0.5 * z * z
    fp = u
    v = 1.0
    gp = v
    for k in range(200):
        t = t * z3 / ((3 * k + 2) * (3 * k + 3))
        s = s * z3 / ((3 * k + 3) * (3 * k + 4))
        u = u * z3 / ((3 * k + 3) * (3 * k + 5))
        v = v * z3 / ((3 * k + 1) * (3 * k + 3))
        f += t
        g += s
        fp += u
        gp += v
        if (
            (3 * k + 2) * (3 * k + 3) > 2.0 * abs(z3)
            and abs(t) < 1e-18 * (1.0 + abs(f))
            and abs(s) < 1e-18 * (1.0 + abs(g))
        ):
            break
    return _AI0 * f + _AIP0 * g, _AI0 * fp + _AIP0 * gp


def _maclaurin_decimal(z: float) -> tuple[float, float]:
    with localcontext() as ctx:
        ctx.prec = _SERIES_PREC
        zd = Decimal(z)
        z3 = zd * zd * zd
        az3 = abs(z3)
        t = Decimal(1)
        f = t
        s = zd
        g = s
        u = zd * zd / 2
        fp = u
        v = Decimal(1)
        gp = v
        for k in range(400):
            t = t * z3 / ((3 * k + 2) * (3 * k + 3))
            s = s * z3 / ((3 * k + 3) * (3 * k + 4))
            u = u * z3 / ((3 * k + 3) * (3 * k + 5))
            v = v * z3 / ((3 * k + 1) * (3 * k + 3))
            f += t
            g += s
            fp += u
            gp += v
            if (
                (3 * k + 2) * (3 * k + 3) > 2 * az3
                and abs(t) < _SERIES_TINY
                and abs(s) < _SERIES_TINY
                and abs(u) < _SERIES_TINY
                and abs(v) < _SERIES_TINY
            ):
                break
        ai = _AI0_D * f + _AIP0_D * g
        aip = _AI0_D * fp + _AIP0_D * gp
    return float(ai), float(aip)


def _asymptotic_positive(z: float) -> tuple[float, float]:
    zeta = 2.0 / 3.0 * z**1.5
    su = 1.0
    sv = 1.0
    prev = 1.0
    term_u = 1.0
    for k in range(1, len(_U)):
        scale = (-1.0 / zeta) ** k
        term_u = _U[k] * scale
        if abs(term_u) >= prev:
            break
        su += term_u
        sv += _V[k] * scale
        prev = abs(term_u)
    damp = math.exp(-zeta)
    ai = damp * su / (2.0 * _SQRT_PI * z**0.25)
    aip = -(z**0.25) * damp * sv / (2.0 * _SQRT_PI)
    return ai, aip


def _asymptotic_negative(z: float) -> tuple[float, float]:
    t = -z
    zeta = 2.0 / 3.0 * t**1.5
    p = 1.0
    q = _U[1] / zeta
    r = 1.0
    w = _V[1] / zeta
    prev = 1.0
    for k in range(1, len(_U) // 2):
        scale = (-1.0) ** k / zeta ** (2 * k)
        term = _U[2 * k] * scale
        if abs(term) >= prev:
            break
        p += term
        q += _U[2 * k + 1] * scale / zeta
        r += _V[2 * k] * scale
        w += _V[2 * k + 1] * scale / zeta
        prev = abs(term)
    theta = zeta - 0.25 * math.pi
    c = math.cos(theta)
    s = math.sin(theta)
    ai = (c * p + s * q) / (_SQRT_PI * t**0.25)
    aip = (s * r - c * w) * t**0.25 / _SQRT_PI
    return ai, aip


def airy_ai(z: float) -> tuple[float, float]:
    """Return (Ai(z), Ai'(z)).

    Raises OutOfRangeError for non-finite z or |z| > Z_MAX.
    """
    z = float(z)
    if not math.isfinite(z) or abs(z) > Z_MAX:
        raise OutOfRangeError(f"airy_ai documented for finite |z| <= {Z_MAX}, got {z!r}")
    if z <= -Z_SWITCH:
        return _asymptotic_negative(z)
    if z >= Z_SWITCH:
        return _asymptotic_positive(z)
    if _FLOAT_SERIES_NEG <= z <= _FLOAT_SERIES_POS:
        return _maclaurin_float(z)
    return _maclaurin_decimal(z)


@dataclass(frozen=True)
class AiryZero:
    """The i-th zero of Ai on the negative axis (1-based, a_1 ~ -2.338)."""

    index: int
    value: float


def _mcmahon_seed(i: int) -> float:
    return -((1.5 * math.pi * (i - 0.25)) ** (2.0 / 3.0))


@lru_cache(maxsize=None)
def _refined_zero(i: int) -> float:
    x = _mcmahon_seed(i)
    for _ in range(40):
        ai, aip = airy_ai(x)
        step = ai / aip
        x -= step
        if abs(step) < 1e-14 * abs(x):
            break
    ai, _ = airy_ai(x)
    if abs(ai) >= 1e-13:
        raise ConvergenceFailureError(
            f"Newton refinement of Airy zero {i} stalled at Ai={ai:.3e}"
        )
    return x


def airy_zero(i: int) -> AiryZero:
    """Return the i-th negative-axis zero of Ai, refined to |Ai(a_i)| < 1e-13."""
    if not isinstance(i, int) or isinstance(i, bool):
        raise IndexOutOfRangeError(f"zero index must be an integer, got {i!r}")
    if not 1 <= i <= MAX_ZERO_INDEX:
        raise IndexOutOfRangeError(
            f"zero index must be in [1, {MAX_ZERO_INDEX}], got {i}"
        )
    return AiryZero(index=i, value=_refined_zero(i))
