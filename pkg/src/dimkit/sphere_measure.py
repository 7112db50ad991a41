"""
Unit-sphere surface, ball volume and angular measure decompositions for
arbitrary real dimension.

The surface is the analytic continuation

    Omega_d = 2 pi**(d/2) / Gamma(d/2),

fixed by requiring the d-dimensional Gaussian integral to equal pi**(d/2).
It vanishes at d = 0, -2, -4, ... and changes sign across each of those
points.  The single-angle measure ``dOmega_d = C(d) sin(theta)**e(d) dtheta``
takes three different forms:

===========  ==========  =================================================
regime       e(d)        C(d)
===========  ==========  =================================================
d > 1        d - 2       2 pi**((d-1)/2) / Gamma((d-1)/2)
0 < d < 1    1 - d       2**(d-1) pi**(d/2-1) sin(pi(2-d)/2) Gamma(3-d) / Gamma(2-d/2)
d < 0        -d - 1      2**(1+d) sin(d pi/2) pi**(d/2-1) Gamma(1-d) / Gamma(-d/2)
===========  ==========  =================================================

In the last two regimes the sine exponent is that of the ordinary measure in
dimension 3 - d and 1 + |d| respectively, so the angular variable always
lives in a dimension where it is integrable.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from . import angular
from .errors import DomainError, RegimeError
from .specfun import gamma_product, rgamma, sinpi

__all__ = [
    "DimensionRegime",
    "AngularFactor",
    "MeasureDecomposition",
    "POLE_GUARD",
    "classify",
    "omega",
    "volume",
    "measure_coefficient",
    "printed_critical_coefficient",
    "sine_exponent",
    "max_angles",
    "decompose",
]

# distance from a non-positive even integer below which d counts as a pole
POLE_GUARD = 1e-9

_LOG_PI = math.log(math.pi)
_LOG_2 = math.log(2.0)


class DimensionRegime(enum.Enum):
    POSITIVE_REGULAR = "PositiveRegular"        # d > 1
    ONE_DIMENSIONAL = "OneDimensional"          # d = 1
    CRITICAL = "Critical"                       # 0 < d < 1
    ZERO_OR_NEGATIVE_EVEN_POLE = "ZeroOrNegativeEvenPole"  # d = 0, -2, -4, ...
    NEGATIVE = "Negative"                       # d < 0, not even

    def __str__(self):
        return self.value


_ANGULAR_REGIMES = (
    DimensionRegime.POSITIVE_REGULAR,
    DimensionRegime.CRITICAL,
    DimensionRegime.NEGATIVE,
)


@dataclass(frozen=True)
class AngularFactor:
    """One factor ``sin(theta_k)**sine_exponent`` with theta_k in [0, pi)."""

    angle_index: int
    sine_exponent: float

    def integral(self) -> float:
        return angular.sin_power(self.sine_exponent)


@dataclass(frozen=True)
class MeasureDecomposition:
    """``dOmega_d = prefactor * prod_k sin(theta_k)**e_k dtheta_k``.

    ``residual_dimension`` is the generating dimension left in the
    prefactor's reciprocal gamma, ``prefactor ~ 1/Gamma(residual/2)``.
    """

    prefactor: float
    angular_factors: tuple[AngularFactor, ...]
    radial_exponent: float
    residual_dimension: float
    source_dimension: float

    @property
    def sine_exponents(self) -> tuple[float, ...]:
        return tuple(f.sine_exponent for f in self.angular_factors)

    def reconstruct(self) -> float:
        """Integrate all angles in closed form; equals ``omega(source_dimension)``."""
        value = self.prefactor
        for factor in self.angular_factors:
            value *= factor.integral()
        return value


def _check_finite(d):
    d = float(d)
    if not math.isfinite(d):
        raise ValueError(f"dimension must be finite, got {d!r}")
    return d


def _near_pole(d):
    if d > POLE_GUARD:
        return False
    return abs(d - 2.0 * round(d / 2.0)) < POLE_GUARD


def classify(d: float) -> DimensionRegime:
    """Assign ``d`` to one of the five structurally distinct zones."""
    d = _check_finite(d)
    if _near_pole(d):
        return DimensionRegime.ZERO_OR_NEGATIVE_EVEN_POLE
    if d == 1.0:
        return DimensionRegime.ONE_DIMENSIONAL
    if d > 1.0:
        return DimensionRegime.POSITIVE_REGULAR
    if d > 0.0:
        return DimensionRegime.CRITICAL
    return DimensionRegime.NEGATIVE


def omega(d: float) -> float:
    """Surface of the unit sphere in ``d`` dimensions, 2 pi^(d/2)/Gamma(d/2).

    Exactly 0 at d = 0, -2, -4, ...; Omega_1 = 2 (two points).
    """
    d = _check_finite(d)
    if d == 1.0:
        return 2.0
    r = rgamma(0.5 * d)
    if r == 0.0:
        return 0.0
    value = 2.0 * math.pi ** (0.5 * d) * r
    if math.isfinite(value) and value != 0.0:
        return value
    # pi**(d/2) or rgamma out of range: recombine in log space
    log_mag = _LOG_2 + 0.5 * d * _LOG_PI - math.lgamma(0.5 * d)
    return math.copysign(math.exp(min(log_mag, 709.78)), r)


def volume(d: float) -> float:
    """Unit-ball volume Omega_d / d.

    Raises :class:`DomainError` at d = 0, where only the one-sided limit
    V(0+) = 1 exists.
    """
    d = _check_finite(d)
    if d == 0.0:
        raise DomainError("V_d is undefined at d = 0 (limit from above is 1)")
    om = omega(d)
    if om == 0.0:
        return 0.0
    return om / d


def _require_angular(d):
    regime = classify(d)
    if regime not in _ANGULAR_REGIMES:
        if regime is DimensionRegime.ONE_DIMENSIONAL:
            raise RegimeError(
                "d = 1 has no continuous angular coordinate (two discrete points)")
        raise RegimeError(
            f"d = {d!r} is a zero of Omega_d (non-positive even dimension); "
            "no measure coefficient exists there")
    return regime


def sine_exponent(d: float) -> float:
    """Exponent of sin(theta) in the single-angle measure of ``d``."""
    d = _check_finite(d)
    regime = _require_angular(d)
    if regime is DimensionRegime.POSITIVE_REGULAR:
        return d - 2.0
    if regime is DimensionRegime.CRITICAL:
        return 1.0 - d
    return -d - 1.0


def _positive_coefficient(d, n=1):
    # 2 pi^((d-n)/2) / Gamma((d-n)/2)
    x = 0.5 * (d - n)
    return 2.0 * math.exp(x * _LOG_PI) * rgamma(x)


def _critical_head(d):
    # 2^(d-1) pi^(d/2-1) sin(pi(2-d)/2) Gamma(3-d); the caller divides by Gamma(2-d/2)
    return (d - 1.0) * _LOG_2 + (0.5 * d - 1.0) * _LOG_PI, sinpi(0.5 * (2.0 - d))


def _negative_head(d):
    # 2^(1+d) sin(d pi/2) pi^(d/2-1) Gamma(1-d)
    return (1.0 + d) * _LOG_2 + (0.5 * d - 1.0) * _LOG_PI, sinpi(0.5 * d)


def _signed(log_pref, s, numer, denom):
    if s == 0.0:
        return 0.0
    return gamma_product(numer, denom, log_pref + math.log(abs(s)), 1 if s > 0 else -1)


def measure_coefficient(d: float) -> float:
    """Prefactor C(d) of the single-angle measure, C(d) * int_0^pi sin^e = Omega_d.

    For 0 < d < 1 this is the coefficient obtained by carrying the
    reflected reciprocal gamma through the beta-function rewrite; see
    :func:`printed_critical_coefficient` for the variant that is off by a
    factor sqrt(pi).
    """
    d = _check_finite(d)
    regime = _require_angular(d)
    if regime is DimensionRegime.POSITIVE_REGULAR:
        return _positive_coefficient(d)
    if regime is DimensionRegime.CRITICAL:
        log_pref, s = _critical_head(d)
        return _signed(log_pref, s, (3.0 - d,), (2.0 - 0.5 * d,))
    log_pref, s = _negative_head(d)
    return _signed(log_pref, s, (1.0 - d,), (-0.5 * d,))


def printed_critical_coefficient(d: float) -> float:
    """(4 pi)^((d-1)/2) sin(pi(2-d)/2) Gamma(3-d) / Gamma(2-d/2), for 0 < d < 1.

    Kept for comparison only: it exceeds :func:`measure_coefficient` by a
    uniform factor sqrt(pi) and therefore does not reproduce Omega_d.
    """
    d = _check_finite(d)
    if classify(d) is not DimensionRegime.CRITICAL:
        raise RegimeError("printed critical coefficient applies to 0 < d < 1 only")
    log_pref = 0.5 * (d - 1.0) * (2.0 * _LOG_2 + _LOG_PI)
    return _signed(log_pref, sinpi(0.5 * (2.0 - d)), (3.0 - d,), (2.0 - 0.5 * d,))


def max_angles(d: float) -> int:
    """Largest number of angular coordinates the generating rule allows.

    * d > 1: floor(d) angles, d - 1 for integer d (the last step would land
      on the pole of Gamma(0));
    * 0 < d < 1: 3 angles (the critical zone may be entered only once);
    * d < 0: floor(|d|) + 1 angles, |d| for odd integer d (the last sine
      exponent would be -1).
    """
    d = _check_finite(d)
    regime = _require_angular(d)
    if regime is DimensionRegime.POSITIVE_REGULAR:
        n = math.floor(d)
        return n - 1 if n == d else n
    if regime is DimensionRegime.CRITICAL:
        return 3
    m = math.floor(-d)
    return m if m == -d else m + 1


def decompose(d: float, n_angles: int) -> MeasureDecomposition:
    """Split dOmega_d into ``n_angles`` sine-power factors and a prefactor.

    Each angle is produced by rewriting the reciprocal gamma of the current
    generating dimension D as ``sin(theta)**(D-2)`` times ``1/Gamma((D-1)/2)``
    (one dimension lower).  Negative d starts from Gamma(-d/2), i.e. the
    generating dimension |d|; a critical d enters the chain once through the
    reflected coefficient and continues from dimension 4 - d.
    """
    d = _check_finite(d)
    n_max = max_angles(d)
    n = int(n_angles)
    if n != n_angles or not 1 <= n <= n_max:
        raise ValueError(f"n_angles must be an integer in [1, {n_max}] for d = {d!r}")
    regime = classify(d)

    if regime is DimensionRegime.POSITIVE_REGULAR:
        prefactor = _positive_coefficient(d, n)
        exps = [d - k - 1.0 for k in range(1, n + 1)]
        residual = d - n
        start = 1
    elif regime is DimensionRegime.NEGATIVE:
        log_pref, s = _negative_head(d)
        log_pref -= 0.5 * (n - 1) * _LOG_PI
        prefactor = _signed(log_pref, s, (1.0 - d,), (-0.5 * (d + n - 1),))
        exps = [-d - k - 1.0 for k in range(n)]
        residual = -d - (n - 1)
        start = 0
    else:
        # sin^(1-d) from the reflected coefficient, then the positive rule
        # acting on 1/Gamma((4-d)/2)
        log_pref, s = _critical_head(d)
        log_pref -= 0.5 * (n - 1) * _LOG_PI
        gen = 4.0 - d
        prefactor = _signed(log_pref, s, (3.0 - d,), (0.5 * (gen - (n - 1)),))
        exps = [1.0 - d] + [gen - k - 1.0 for k in range(1, n)]
        residual = gen - (n - 1)
        start = 0

    factors = tuple(AngularFactor(start + i, e) for i, e in enumerate(exps))
    return MeasureDecomposition(
        prefactor=prefactor,
        angular_factors=factors,
        radial_exponent=d - 1.0,
        residual_dimension=residual,
        source_dimension=d,
    )
