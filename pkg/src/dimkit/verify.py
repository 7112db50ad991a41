"""
Self-check suites run by ``dimkit verify``.

Every suite compares a closed form against an independent evaluation
(quadrature, recurrence or a second algebraic route) on seeded random
samples and reports the worst deviation.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import angular, loop_integrals, radial, specfun, sphere_measure
from .quadrature import integrate_finite

DEFAULT_TOL = 1e-9
SEED = 20240611


def oracle_tolerance() -> float:
    """Relative oracle tolerance, overridable through ``DIMKIT_TOL``."""
    raw = os.environ.get("DIMKIT_TOL")
    if raw is None:
        return DEFAULT_TOL
    tol = float(raw)
    if not tol > 0:
        raise ValueError(f"DIMKIT_TOL must be positive, got {raw!r}")
    return tol


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    worst: float
    limit: float
    samples: int

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"{status} {self.name}: worst {self.worst:.3e} "
                f"(limit {self.limit:.1e}, {self.samples} samples)")


def _rel(a, b):
    return abs(a - b) / abs(b) if b != 0 else abs(a)


def _avoid_even(rng, lo, hi, n, gap):
    out = []
    while len(out) < n:
        d = rng.uniform(lo, hi)
        if abs(d - 2 * round(d / 2)) > gap:
            out.append(d)
    return out


def _sin_quad(e):
    # sin^e on [0, pi] as twice the half interval; near-singular end at 0
    res = integrate_finite(lambda t: np.sin(t) ** e, 0.0, 0.5 * math.pi, 1e-14)
    return 2.0 * res.value


def check_special_functions(rng, tol):
    worst = 0.0
    n = 500
    for x in rng.uniform(-20, 20, n):
        if abs(x - round(x)) < 1e-3:
            continue
        # reflection
        lhs = specfun.gamma(x) * specfun.gamma(1.0 - x)
        worst = max(worst, _rel(lhs, math.pi / specfun.sinpi(x)))
    for z in rng.uniform(-15, 15, n):
        if abs(z - round(z)) < 1e-3 or abs(2 * z - round(2 * z)) < 1e-3:
            continue
        # Legendre duplication
        lhs = specfun.gamma(z) * specfun.gamma(z + 0.5)
        rhs = 2.0 ** (1.0 - 2.0 * z) * math.sqrt(math.pi) * specfun.gamma(2.0 * z)
        worst = max(worst, _rel(lhs, rhs))
    for z in rng.uniform(0.01, 20, n):
        if abs(z - round(z)) < 1e-3:
            continue
        worst = max(worst, _rel(specfun.rgamma_reflected(z), specfun.rgamma(-z)))
    return worst, 1e-10, 3 * n


def check_critical_closure(rng, tol):
    worst = 0.0
    ds = rng.uniform(0.05, 0.95, 100)
    for d in ds:
        value = sphere_measure.measure_coefficient(d) * _sin_quad(1.0 - d)
        worst = max(worst, _rel(value, sphere_measure.omega(d)))
    return worst, tol, ds.size


def check_printed_critical(rng, tol):
    worst = 0.0
    ds = rng.uniform(0.05, 0.95, 100)
    for d in ds:
        ratio = (sphere_measure.printed_critical_coefficient(d) * _sin_quad(1.0 - d)
                 / sphere_measure.omega(d))
        worst = max(worst, _rel(ratio, math.sqrt(math.pi)))
    return worst, tol, ds.size


def check_negative_closure(rng, tol):
    worst = 0.0
    ds = _avoid_even(rng, -6.0, -0.05, 100, 0.05)
    for d in ds:
        value = sphere_measure.measure_coefficient(d) * _sin_quad(-d - 1.0)
        worst = max(worst, _rel(value, sphere_measure.omega(d)))
    return worst, tol, len(ds)


def check_multi_angle(rng, tol):
    worst = 0.0
    count = 0
    for d in list(rng.uniform(1.05, 8.0, 20)) + list(rng.uniform(0.05, 0.95, 10)) \
            + _avoid_even(rng, -8.0, -0.05, 20, 0.05):
        for n in range(1, sphere_measure.max_angles(d) + 1):
            dec = sphere_measure.decompose(d, n)
            worst = max(worst, _rel(dec.reconstruct(), sphere_measure.omega(d)))
            count += 1
    return worst, tol, count


def check_recurrence(rng, tol):
    worst = 0.0
    ds = _avoid_even(rng, -10.0, 10.0, 500, 1e-3)
    for d in ds:
        lhs = sphere_measure.omega(d + 2.0)
        rhs = 2.0 * math.pi / d * sphere_measure.omega(d)
        worst = max(worst, _rel(lhs, rhs))
    return worst, 1e-12, len(ds)


def check_volume_limit(rng, tol):
    return abs(sphere_measure.volume(1e-6) - 1.0), 1e-5, 1


def check_vacuum_bubble(rng, tol):
    worst = 0.0
    ds = rng.uniform(0.2, 1.8, 20)
    for d in ds:
        r = loop_integrals.vacuum_bubble(d, rng.uniform(0.5, 3.0))
        worst = max(worst, r.rel_diff)
    return worst, max(tol, 1e-8), ds.size


def check_dot_product(rng, tol):
    worst = 0.0
    ds = _avoid_even(rng, -6.0, -0.01, 50, 1e-3)
    for d in ds:
        r = loop_integrals.dot_product_integral(d, 1.0)
        c = r.components
        scale = abs(c["q"] * c["radial_part"] * c["measure_coefficient"]) * max(
            abs(c["term1"]), abs(c["term2"]))
        worst = max(worst, abs(r.closed_form) / scale)
    return worst, 1e-12, len(ds)


def check_external_momentum(rng, tol):
    worst = 0.0
    ds = []
    while len(ds) < 20:
        d = rng.uniform(-4.0, -2.1)
        if abs(d + 3.0) > 1e-3:
            ds.append(d)
    for d in ds:
        r = loop_integrals.external_momentum_integral(d, rng.uniform(0.5, 3.0),
                                                      rng.uniform(0.5, 3.0))
        worst = max(worst, r.rel_diff)
    return worst, max(tol, 1e-8), len(ds)


def check_extraction(rng, tol):
    # closed-form agreement within the reported error, on a normalised scale
    worst = 0.0
    ds = _avoid_even(rng, -4.0, 4.0, 30, 0.1)
    for d in ds:
        spec = radial.RadialIntegrandSpec.for_dimension(
            radial.IntegrandKind.POWER_OVER_ONE_PLUS, d)
        ext = radial.extract_finite_part(spec)
        exact = radial.closed_form_finite_part(spec, d)
        worst = max(worst, abs(ext.finite_part - exact) / max(1e-4, ext.error_estimate))
    return worst, 1.0, len(ds)


def check_scheme_independence(rng, tol):
    worst = 0.0
    ds = _avoid_even(rng, -4.0, 4.0, 30, 0.1)
    base_d = np.array(radial.DEFAULT_DELTA_GRID)
    base_k = np.array(radial.DEFAULT_K_GRID)
    for d in ds:
        spec = radial.RadialIntegrandSpec.for_dimension(
            radial.IntegrandKind.POWER_OVER_ONE_PLUS, d)
        r1 = radial.extract_finite_part(spec, 0.0, base_d, base_k)
        r2 = radial.extract_finite_part(spec, 0.0, 2 * base_d, 2 * base_k)
        bound = 3.0 * max(r1.error_estimate, r2.error_estimate)
        worst = max(worst, abs(r1.finite_part - r2.finite_part) / bound)
    return worst, 1.0, len(ds)


def check_angular_integrals(rng, tol):
    worst = 0.0
    ds = rng.uniform(-6.0, -2.05, 20)
    for d in ds:
        e = -d - 1.0
        res = integrate_finite(
            lambda p: 2.0 ** e * np.sin(p) ** (e - 2.0) * np.cos(p) ** e,
            0.0, 0.5 * math.pi, 1e-14)
        exact = angular.sin_power_over_one_minus_cos(d)
        worst = max(worst, _rel(res.value, exact),
                    _rel(angular.sin_power_over_one_minus_cos_duplication(d), exact))
    return worst, tol, ds.size


SUITES: dict[str, Callable] = {
    "special_functions": check_special_functions,
    "critical_closure": check_critical_closure,
    "printed_critical_sqrt_pi": check_printed_critical,
    "negative_closure": check_negative_closure,
    "multi_angle": check_multi_angle,
    "recurrence": check_recurrence,
    "volume_limit": check_volume_limit,
    "angular_integrals": check_angular_integrals,
    "vacuum_bubble": check_vacuum_bubble,
    "dot_product": check_dot_product,
    "external_momentum": check_external_momentum,
    "extraction": check_extraction,
    "scheme_independence": check_scheme_independence,
}


def run_suites(name_filter: str | None = None, tol: float | None = None,
               seed: int = SEED) -> list[CheckResult]:
    """Run all suites whose name contains ``name_filter``."""
    tol = oracle_tolerance() if tol is None else tol
    results = []
    for name, suite in SUITES.items():
        if name_filter and name_filter not in name:
            continue
        rng = np.random.default_rng(seed)
        worst, limit, n = suite(rng, tol)
        worst = float(worst)
        results.append(CheckResult(name, bool(worst <= limit), worst, limit, n))
    return results
