"""
Real-argument gamma-family kernel.

The reciprocal gamma function is the primitive: it is an entire function,
so ``rgamma`` is exactly zero at 0, -1, -2, ... and every closed form that
must vanish there (e.g. the unit-sphere surface at negative even dimension)
inherits exact zeros instead of dividing by an overflowed pole.

For arguments >= 1/2 the stdlib Lanczos implementation supplies Gamma; the
left half-line is reached through the reflection formula with an
argument-reduced ``sinpi``.  Products and ratios of several gamma factors go
through :func:`gamma_product`, which works with ``log|Gamma|`` plus an
explicit sign so large arguments do not overflow.
"""

from __future__ import annotations

import math
from typing import Iterable

from .errors import PoleError

__all__ = [
    "is_pole",
    "sinpi",
    "rgamma",
    "gamma",
    "lgamma_signed",
    "gamma_product",
    "beta",
    "rgamma_reflected",
]

_LOG_PI = math.log(math.pi)
_GAMMA_OVERFLOW = 171.0


def _check_finite(x: float) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"argument must be finite, got {x!r}")
    return x


def is_pole(x: float) -> bool:
    """True if ``x`` is a pole of Gamma (0, -1, -2, ...)."""
    return x <= 0 and x == math.floor(x)


def sinpi(x: float) -> float:
    """sin(pi x) with exact reduction modulo 2.

    Exact 0 at integers and exact +-1 at half-integers.
    """
    x = _check_finite(x)
    r = math.fmod(x, 2.0)          # exact, r in (-2, 2)
    if r > 1.0:
        r -= 2.0
    elif r <= -1.0:
        r += 2.0
    # r in (-1, 1]; fold onto [-1/2, 1/2]
    if r > 0.5:
        r = 1.0 - r
    elif r < -0.5:
        r = -1.0 - r
    if r == 0.0:
        return 0.0
    return math.sin(math.pi * r)


def rgamma(x: float) -> float:
    """Reciprocal gamma 1/Gamma(x) for any finite real x.

    Returns exactly 0.0 at non-positive integers.  Far left of the origin
    the result grows factorially and saturates to +-inf.
    """
    x = _check_finite(x)
    if is_pole(x):
        return 0.0
    if x >= 0.5:
        if x > _GAMMA_OVERFLOW:
            return math.exp(-math.lgamma(x))
        return 1.0 / math.gamma(x)
    # 1/Gamma(x) = Gamma(1 - x) sin(pi x) / pi
    s = sinpi(x)
    if 1.0 - x > _GAMMA_OVERFLOW:
        log_mag = math.lgamma(1.0 - x) + math.log(abs(s)) - _LOG_PI
        mag = math.inf if log_mag > 709.0 else math.exp(log_mag)
        return math.copysign(mag, s)
    return math.gamma(1.0 - x) * s / math.pi


def gamma(x: float) -> float:
    """Gamma(x); raises :class:`PoleError` at 0, -1, -2, ..."""
    x = _check_finite(x)
    if is_pole(x):
        raise PoleError(f"Gamma has a pole at {x!r}; use rgamma for the entire reciprocal")
    r = rgamma(x)
    if r == 0.0:
        # underflow of 1/Gamma for large x
        return math.inf
    return 1.0 / r


def lgamma_signed(x: float) -> tuple[float, int]:
    """Return ``(log|Gamma(x)|, sign(Gamma(x)))``."""
    x = _check_finite(x)
    if is_pole(x):
        raise PoleError(f"Gamma has a pole at {x!r}")
    if x > 0:
        return math.lgamma(x), 1
    sign = 1 if math.floor(x) % 2 == 0 else -1
    return math.lgamma(x), sign


def gamma_product(numer: Iterable[float], denom: Iterable[float] = (),
                  log_prefactor: float = 0.0, sign: int = 1) -> float:
    """Evaluate ``sign * exp(log_prefactor) * prod Gamma(numer) / prod Gamma(denom)``.

    The product is assembled in log space.  A pole in the denominator makes
    the result exactly zero; a pole in the numerator raises
    :class:`PoleError`.
    """
    numer = [_check_finite(v) for v in numer]
    denom = [_check_finite(v) for v in denom]
    for v in numer:
        if is_pole(v):
            raise PoleError(f"Gamma({v!r}) in numerator is a pole")
    if sign == 0 or any(is_pole(v) for v in denom):
        return 0.0
    # direct product is more accurate while nothing over/underflows
    if abs(log_prefactor) < 600 and all(abs(v) < _GAMMA_OVERFLOW for v in numer + denom):
        value = sign * math.exp(log_prefactor)
        for v in numer:
            value *= gamma(v)
        for v in denom:
            value *= rgamma(v)
        if math.isfinite(value) and 1e-290 < abs(value) < 1e290:
            return value
    log_mag = log_prefactor
    for v in numer:
        lg, s = lgamma_signed(v)
        log_mag += lg
        sign *= s
    for v in denom:
        lg, s = lgamma_signed(v)
        log_mag -= lg
        sign *= s
    if log_mag > 709.78:
        return math.copysign(math.inf, sign)
    return math.copysign(math.exp(log_mag), sign)


def beta(x: float, y: float) -> float:
    """Euler beta B(x, y) = Gamma(x) Gamma(y) / Gamma(x + y), in log space.

    Poles of Gamma(x) or Gamma(y) raise :class:`PoleError`; when only
    ``x + y`` is a pole the continued value 0 is returned.
    """
    return gamma_product((x, y), (x + y,))


def rgamma_reflected(z: float) -> float:
    """1/Gamma(-z) for z > 0 written with convergent factors only.

    Uses reflection and Legendre duplication to express the reciprocal gamma
    at a negative argument as a beta function,

        1/Gamma(-z) = -(2**(-2z) sin(pi z) / pi) * Gamma(2z + 1)/Gamma(z) * B(1/2, z),

    which is how angular integration variables are generated for
    non-convergent dimensions.
    """
    z = _check_finite(z)
    if z <= 0:
        raise ValueError("z must be positive")
    s = sinpi(z)
    if s == 0.0:
        return 0.0
    log_pref = -2.0 * z * math.log(2.0) - _LOG_PI + math.log(abs(s))
    sign = -1 if s > 0 else 1
    return gamma_product((2.0 * z + 1.0,), (z,), log_pref, sign) * beta(0.5, z)
