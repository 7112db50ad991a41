"""
Closed-form angular integrals over theta in [0, pi).

With z = -cos(theta) every integrand used here becomes a beta kernel

    int_{-1}^{1} (1 - z)**alpha (1 + z)**beta dz = 2**(alpha+beta+1) B(alpha+1, beta+1),

so all three public integrals are thin wrappers around :func:`beta_kernel`.
"""

from __future__ import annotations

import math
from typing import NamedTuple

from .errors import DivergenceError
from .specfun import gamma_product

__all__ = [
    "BetaKernelParams",
    "AngularTerms",
    "beta_kernel",
    "sin_power",
    "sin_power_cos",
    "sin_power_over_one_minus_cos",
    "sin_power_over_one_minus_cos_duplication",
]

_LOG_2 = math.log(2.0)
_LOG_SQRT_PI = 0.5 * math.log(math.pi)


class BetaKernelParams(NamedTuple):
    alpha: float      # exponent of (1 - z)
    beta_exp: float   # exponent of (1 + z)


class AngularTerms(NamedTuple):
    term1: float
    term2: float
    total: float


def beta_kernel(alpha: float, beta_exp: float) -> float:
    """int_{-1}^{1} (1-z)^alpha (1+z)^beta_exp dz for alpha, beta_exp > -1."""
    alpha = float(alpha)
    beta_exp = float(beta_exp)
    if not (alpha > -1.0 and beta_exp > -1.0):
        raise DivergenceError(
            f"beta kernel diverges for alpha={alpha!r}, beta={beta_exp!r} (need both > -1)")
    a1 = alpha + 1.0
    b1 = beta_exp + 1.0
    return gamma_product((a1, b1), (a1 + b1,), (a1 + b1 - 1.0) * _LOG_2)


def sin_power(a: float) -> float:
    """int_0^pi sin(theta)^a dtheta = sqrt(pi) Gamma((a+1)/2) / Gamma(a/2 + 1)."""
    a = float(a)
    if not a > -1.0:
        raise DivergenceError(f"int_0^pi sin^a diverges for a = {a!r} <= -1")
    half = 0.5 * (a - 1.0)
    return beta_kernel(half, half)


def sin_power_cos(d: float) -> AngularTerms:
    """int_0^pi sin(theta)^(-d-1) cos(theta) dtheta for d < 0, split in two.

    Writing z = 1 + (z - 1) gives

        term1 = -2^(-d) Gamma(-d/2) Gamma(1-d/2) / Gamma(1-d)
        term2 = 2^(-d-1) Gamma(-d/2)^2 / Gamma(-d)

    The integrand is odd about theta = pi/2, so ``total`` is zero up to
    rounding; the terms are reported because products built from them are
    what appear in loop integrals with a single dot product.
    """
    d = float(d)
    if not d < 0.0:
        raise DivergenceError(f"sin^(-d-1) cos integral needs d < 0, got d = {d!r}")
    e = -0.5 * d - 1.0
    term1 = -beta_kernel(e, e + 1.0)
    term2 = beta_kernel(e, e)
    return AngularTerms(term1, term2, term1 + term2)


def sin_power_over_one_minus_cos(d: float) -> float:
    """int_0^pi sin(theta)^(-d-1) / (1 - cos(theta)) dtheta for d < -2.

    Equals 2^(-d-2) Gamma(-d/2-1) Gamma(-d/2) / Gamma(-d-1).
    """
    d = float(d)
    if not d < -2.0:
        raise DivergenceError(
            f"sin^(-d-1)/(1-cos) diverges at theta = 0 unless d < -2, got d = {d!r}")
    return beta_kernel(-0.5 * d - 1.0, -0.5 * d - 2.0)


def sin_power_over_one_minus_cos_duplication(d: float) -> float:
    """Same integral as :func:`sin_power_over_one_minus_cos`, simplified with
    Legendre duplication: sqrt(pi) Gamma(-d/2-1) / Gamma(-(d+1)/2).

    A frequently quoted variant carries an extra factor -(1+d)/2; it only
    coincides with the integral at d = -3.
    """
    d = float(d)
    if not d < -2.0:
        raise DivergenceError(f"need d < -2, got d = {d!r}")
    return gamma_product((-0.5 * d - 1.0,), (-0.5 * (d + 1.0),), _LOG_SQRT_PI)
