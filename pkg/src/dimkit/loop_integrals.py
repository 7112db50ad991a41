"""
Worked one-loop integrals in arbitrary real dimension.

Each function returns the closed form assembled from named factors together
with an independent oracle: the same radial factor obtained by direct
quadrature or by finite-part extraction, and (where there is one) the
angular factor obtained by quadrature instead of its beta-function form.

All three share the Euclidean measure ``int d^d p / (2 pi)^d`` and the
substitution y = p^2 / m^2 for the radial integral.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import angular, radial
from .errors import PoleError, RegimeError
from .quadrature import integrate_finite
from .radial import IntegrandKind, RadialIntegrandSpec
from .specfun import gamma_product, is_pole
from .sphere_measure import classify, DimensionRegime, measure_coefficient, omega

__all__ = [
    "LoopResult",
    "vacuum_bubble",
    "dot_product_integral",
    "external_momentum_integral",
    "printed_external_momentum",
]

_LOG_2PI = math.log(2.0 * math.pi)


@dataclass(frozen=True)
class LoopResult:
    """Closed form, its factors, and an optional independent oracle.

    ``closed_form`` is the product of the values in ``components``.
    """

    closed_form: float
    oracle: float | None = None
    abs_diff: float | None = None
    components: dict = field(default_factory=dict)
    oracle_error: float | None = None

    @property
    def rel_diff(self):
        if self.abs_diff is None:
            return None
        return self.abs_diff / abs(self.closed_form) if self.closed_form else self.abs_diff

    def as_dict(self):
        return {
            "closed_form": self.closed_form,
            "oracle": self.oracle,
            "abs_diff": self.abs_diff,
            "oracle_error": self.oracle_error,
            "components": dict(self.components),
        }


def _product(components):
    value = 1.0
    for v in components.values():
        value *= v
    return value


def _finish(components, oracle=None, oracle_error=None):
    closed = _product(components)
    if oracle is None:
        return LoopResult(closed, components=components)
    return LoopResult(closed, float(oracle), abs(closed - float(oracle)),
                      components, float(oracle_error))


def _require_positive(name, x):
    x = float(x)
    if not (x > 0 and math.isfinite(x)):
        raise ValueError(f"{name} must be positive and finite, got {x!r}")
    return x


def _measure_prefactor(d, mass_power, m, k=1.0):
    # (m^2)^mass_power / (2 k (2 pi)^d), with (2 pi)^d applied in log space
    return math.exp(2.0 * mass_power * math.log(m) - d * _LOG_2PI - math.log(2.0 * k))


def vacuum_bubble(d: float, m: float, oracle: bool = True) -> LoopResult:
    """I(d, m) = int d^d p / (2 pi)^d  1 / (p^2 + m^2).

    Assembled as (m^2)^(d/2-1) / (2 (2 pi)^d) * Omega_d * Gamma(d/2) Gamma(1-d/2),
    which equals Gamma(1 - d/2) m^(d-2) / (4 pi)^(d/2).

    Raises
    ------
    PoleError
        At even integer d, where the radial factor has a pole.
    """
    d = float(d)
    m = _require_positive("m", m)
    spec = RadialIntegrandSpec.for_dimension(IntegrandKind.POWER_OVER_ONE_PLUS, d)
    if d == 2.0 * round(0.5 * d):
        raise PoleError(f"vacuum bubble has a gamma pole at even d = {d!r}")
    components = {
        "prefactor": _measure_prefactor(d, 0.5 * d - 1.0, m),
        "omega": omega(d),
        "radial_part": radial.closed_form_finite_part(spec, d),
    }
    if not oracle:
        return _finish(components)
    base = components["prefactor"] * components["omega"]
    if 0.0 < d < 2.0:
        res = radial.convergent_integral(spec)
        return _finish(components, base * res.value, abs(base) * res.error_estimate)
    ext = radial.extract_finite_part(spec)
    return _finish(components, base * ext.finite_part, abs(base) * ext.error_estimate)


def dot_product_integral(d: float, q: float) -> LoopResult:
    """K(q) = q / (d - 2) * C(d) * int_0^pi sin^(-d-1) cos, for d < 0.

    The radial factor 1/(d-2) is the finite part of int_delta^1 r^(d-3) dr.
    The angular integral is reported as its two beta-kernel terms, which
    cancel exactly (the integrand is odd about pi/2).
    """
    d = float(d)
    q = float(q)
    if not math.isfinite(q):
        raise ValueError("q must be finite")
    if not d < 0.0:
        raise RegimeError(f"the dot-product integral needs d < 0, got d = {d!r}")
    terms = angular.sin_power_cos(d)
    components = {
        "q": q,
        "radial_part": 1.0 / (d - 2.0),
        "measure_coefficient": measure_coefficient(d),
        "angular_part": terms.total,
    }
    result = _finish(components)
    return LoopResult(
        result.closed_form,
        components={**components, "term1": terms.term1, "term2": terms.term2},
    )


def _g_radial_spec(d):
    # int dp p^(d-2)/(p^2+m^2) -> (m^2)^((d-3)/2)/2 * int y^((d-3)/2)/(1+y)
    return RadialIntegrandSpec.for_dimension(IntegrandKind.POWER_OVER_ONE_PLUS, d)


def _angular_oracle(d):
    """Quadrature of int_0^pi sin^e / (1 - cos), e = -d-1, in half-angle form."""
    e = -d - 1.0

    def f(phi):
        return 2.0 ** e * np.sin(phi) ** (e - 2.0) * np.cos(phi) ** e

    return integrate_finite(f, 0.0, 0.5 * math.pi, 1e-14)


def external_momentum_integral(d: float, k: float, m: float,
                               oracle: bool = True) -> LoopResult:
    """G(k) = int d^d p / (2 pi)^d  1 / ((p k - p.k)(p^2 + m^2)) for d < -2.

    Assembled as

        (m^2)^((d-3)/2) / (2 k (2 pi)^d) * Gamma((d-1)/2) Gamma((3-d)/2)
            * C(d) * int_0^pi sin^(-d-1) / (1 - cos)

    The oracle replaces the angular beta form by quadrature and the radial
    gamma pair by finite-part extraction of the same integrand.

    Raises
    ------
    RegimeError
        If d >= -2 (angular integral diverges) or d is a non-positive even
        integer.
    PoleError
        At odd integer d, where Gamma((d-1)/2) has a pole.
    """
    d = float(d)
    k = _require_positive("k", k)
    m = _require_positive("m", m)
    if not d < -2.0:
        raise RegimeError(f"the angular integral converges only for d < -2, got d = {d!r}")
    if is_pole(0.5 * (d - 1.0)):
        raise PoleError(f"Gamma((d-1)/2) has a pole at d = {d!r}")
    if classify(d) is DimensionRegime.ZERO_OR_NEGATIVE_EVEN_POLE:
        raise RegimeError(f"d = {d!r} is a zero of Omega_d; no measure coefficient")
    spec = _g_radial_spec(d)
    components = {
        "prefactor": _measure_prefactor(d, 0.5 * (d - 3.0), m, k),
        "radial_part": gamma_product((0.5 * (d - 1.0), 0.5 * (3.0 - d))),
        "measure_coefficient": measure_coefficient(d),
        "angular_part": angular.sin_power_over_one_minus_cos(d),
    }
    if not oracle:
        return _finish(components)
    ang = _angular_oracle(d)
    ext = radial.extract_finite_part(spec, d_half_shift=-0.5)
    base = components["prefactor"] * components["measure_coefficient"]
    value = base * ang.value * ext.finite_part
    err = abs(base) * (abs(ang.value) * ext.error_estimate
                       + abs(ext.finite_part) * ang.error_estimate)
    return _finish(components, value, err)


def printed_external_momentum(d: float, k: float, m: float) -> float:
    """G(k) transcribed from its frequently quoted final display.

    (2 pi)^d G = 2^(1+d) (1+d) sin(-d pi/2) pi^((d-1)/2) Gamma(1-d)
                 / (4 k (-d/2-1) m^(1-d) Gamma(-(d+1)/2))
                 * Gamma((d-1)/2) Gamma((3-d)/2)

    Kept only for comparison with :func:`external_momentum_integral`.
    """
    d = float(d)
    k = _require_positive("k", k)
    m = _require_positive("m", m)
    s = math.sin(-0.5 * math.pi * d)
    log_pref = ((1.0 + d) * math.log(2.0) + 0.5 * (d - 1.0) * math.log(math.pi)
                - math.log(4.0 * k) - (1.0 - d) * math.log(m) - d * _LOG_2PI)
    lin = (1.0 + d) * s / (-0.5 * d - 1.0)
    if lin == 0.0:
        return 0.0
    return gamma_product(
        (1.0 - d, 0.5 * (d - 1.0), 0.5 * (3.0 - d)),
        (-0.5 * (d + 1.0),),
        log_pref + math.log(abs(lin)),
        1 if lin > 0 else -1,
    )
