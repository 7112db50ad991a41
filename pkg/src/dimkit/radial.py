"""
Cutoff-regularised radial integrals and their finite parts.

A radial integral ``int_0^inf f(y) dy`` that diverges at the origin and/or
at infinity is regulated as ``int_delta^K f(y) dy``.  For the integrand
families handled here the regulated value is

    C + sum_j c_j (delta/m)**p_j + sum_j e_j (K/m)**q_j

with exponents known in advance; the finite part ``C`` is what is left once
every cutoff-dependent power is removed.  The removal follows the operator
``1 - int d(delta) d/d(delta)`` literally:

* d/d(delta) of the regulated integral is ``-f(delta)``, which can be
  sampled exactly.  The samples are fitted by least squares in the known
  power family, giving the coefficients ``c_j``.
* The fitted family is integrated term by term without integration
  constant and subtracted from the quadrature value at every grid point.
  Each grid point then yields its own estimate of ``C``.

The spread of those per-point estimates is the numerical scheme dependence
and is reported (with the quadrature errors) as ``error_estimate``.  The UV
side is mapped onto the same problem with t = m/K.

The integral is split at y = m: ``int_delta^K = int_delta^m + int_m^K``, so
every (delta, K) rectangle is assembled from one IR and one UV piece.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from numpy.polynomial import Chebyshev, Polynomial

from .errors import ExtractionError, PoleError
from .quadrature import QuadratureResult, integrate_finite, integrate_semi_infinite
from .specfun import gamma, is_pole, sinpi

__all__ = [
    "IntegrandKind",
    "RadialIntegrandSpec",
    "StrippedTerm",
    "ExtractionResult",
    "DEFAULT_DELTA_GRID",
    "DEFAULT_K_GRID",
    "extract_finite_part",
    "closed_form_finite_part",
    "convergent_integral",
]

DEFAULT_DELTA_GRID = (1e-3, 2e-3, 4e-3, 8e-3)
DEFAULT_K_GRID = (1e3, 2e3, 4e3, 8e3)

COLLISION_TOL = 1e-9
MAX_CONDITION = 1e12
_MAX_TERMS = 40
_PIECE_TOL = 1e-15
# expansions are sampled out to this fraction of the scale, well inside the
# radius of convergence, so the low-order coefficients are well determined
_FIT_RADIUS = 0.5
_SPREAD_SAFETY = 8.0


class IntegrandKind(enum.Enum):
    PURE_POWER = "PurePower"                    # y^a
    POWER_OVER_ONE_PLUS = "PowerOverOnePlus"    # y^a / (1 + y)
    POWER_EXP = "PowerExp"                      # y^a exp(-y)

    def __str__(self):
        return self.value

    @classmethod
    def parse(cls, name: str) -> "IntegrandKind":
        key = name.replace("-", "").replace("_", "").lower()
        for kind in cls:
            if kind.value.lower() == key:
                return kind
        raise ValueError(f"unknown integrand kind {name!r}; "
                         f"choose from {', '.join(k.value for k in cls)}")


@dataclass(frozen=True)
class RadialIntegrandSpec:
    """Integrand ``u**exponent * h(u)`` in the dimensionless variable u = y/scale."""

    kind: IntegrandKind
    exponent: float
    scale: float = 1.0

    def __post_init__(self):
        if not self.scale > 0 or not math.isfinite(self.scale):
            raise ValueError("scale must be positive and finite")
        if not math.isfinite(self.exponent):
            raise ValueError("exponent must be finite")

    @classmethod
    def for_dimension(cls, kind: IntegrandKind, d: float, scale: float = 1.0):
        """The loop-integral radial shape: exponent d/2 - 1."""
        return cls(kind, 0.5 * d - 1.0, scale)

    def __call__(self, u):
        u = np.asarray(u, dtype=float)
        with np.errstate(over="ignore", under="ignore"):
            return u ** self.exponent * _shape(self.kind)(u)


@dataclass(frozen=True)
class StrippedTerm:
    side: str           # "delta" or "K"
    exponent: float     # power of (delta/scale) or (K/scale)
    coefficient: float


@dataclass(frozen=True)
class ExtractionResult:
    finite_part: float
    stripped_terms: tuple[StrippedTerm, ...]
    error_estimate: float
    per_point: dict = field(default_factory=dict, compare=False)


def _shape(kind):
    if kind is IntegrandKind.PURE_POWER:
        return lambda u: np.ones_like(u)
    if kind is IntegrandKind.POWER_OVER_ONE_PLUS:
        return lambda u: 1.0 / (1.0 + u)
    return lambda u: np.exp(-u)


@dataclass(frozen=True)
class _Side:
    """phi(v) = v**(p0 - 1) * eta(v) on (0, 1]; ``eta`` analytic at 0 or None."""

    phi: Callable
    p0: float
    eta: Callable | None


def _sides(spec: RadialIntegrandSpec, a: float):
    h = _shape(spec.kind)

    def ir_phi(v):
        return v ** a * h(v)

    ir = _Side(ir_phi, a + 1.0, h)

    # t = 1/u maps int_1^K onto int_{1/K}^1 of t^(-a-2) h(1/t)
    if spec.kind is IntegrandKind.PURE_POWER:
        uv = _Side(lambda t: t ** (-a - 2.0), -a - 1.0, lambda t: np.ones_like(t))
    elif spec.kind is IntegrandKind.POWER_OVER_ONE_PLUS:
        uv = _Side(lambda t: t ** (-a - 1.0) / (1.0 + t), -a, lambda t: 1.0 / (1.0 + t))
    else:
        # exponentially small in K: no scale terms to remove
        uv = _Side(lambda t: t ** (-a - 2.0) * np.exp(-1.0 / t), 0.0, None)
    return ir, uv


def _chebyshev_points(n):
    k = np.arange(n)
    return 0.5 * (1.0 - np.cos(np.pi * (k + 0.5) / n))


def _cheb_fit(eta, radius, n_terms):
    x = radius * _chebyshev_points(3 * n_terms + 4)
    y = eta(x)
    series, (resid, _, sv, _) = Chebyshev.fit(x, y, n_terms - 1, domain=[0.0, radius], full=True)
    return series, sv[0] / sv[-1], float(np.max(np.abs(y)))


def _fit_expansion(eta, radius):
    """Power coefficients b_j of eta(v) = sum_j b_j v**j, sampled on (0, radius].

    Returns the coefficients and a per-coefficient uncertainty taken from
    the change between two fit degrees.
    """
    for n_terms in range(2, _MAX_TERMS + 1, 2):
        series, cond, scale = _cheb_fit(eta, radius, n_terms)
        if cond > MAX_CONDITION:
            raise ExtractionError(
                f"expansion fit is ill-conditioned (condition number {cond:.2e}); "
                "move the cutoff grid closer to the singular end")
        check = radius * _chebyshev_points(2 * n_terms + 11)
        resid = float(np.max(np.abs(series(check) - eta(check))))
        if resid <= 4.0 * np.finfo(float).eps * max(scale, np.finfo(float).tiny):
            break
    else:
        raise ExtractionError(
            f"scale-term expansion did not converge with {_MAX_TERMS} terms "
            f"(residual {resid:.2e}); the cutoff grid extends too far from the singular end")
    coef = series.convert(kind=Polynomial).coef
    spread = np.zeros_like(coef)
    for extra in (2, 4, 6):
        alt = _cheb_fit(eta, radius, n_terms + extra)[0].convert(kind=Polynomial).coef
        spread = np.maximum(spread, np.abs(alt[: coef.size] - coef))
    # degree-to-degree changes understate the conversion error by a few
    return coef, _SPREAD_SAFETY * spread, resid


def _extract_side(side: _Side, grid: np.ndarray, label: str):
    """Finite part of int_v^1 phi over the cutoff grid ``grid`` (values in (0, 1))."""
    values = []
    quad_err = []
    for v in grid:
        res = integrate_finite(side.phi, v, 1.0, _PIECE_TOL)
        values.append(res.value)
        quad_err.append(res.error_estimate)
    values = np.array(values)
    quad_err = np.array(quad_err)

    terms = []
    if side.eta is None:
        subtracted = np.zeros_like(values)
    else:
        radius = max(_FIT_RADIUS, float(np.max(grid)))
        b, db, resid = _fit_expansion(side.eta, radius)
        exps = side.p0 + np.arange(b.size)
        near = exps[np.abs(exps) < COLLISION_TOL]
        if near.size:
            raise ExtractionError(
                f"scale exponent {near[0]:.3g} on the {label} side collides with 0: "
                "logarithmic divergence, no power-law finite part")
        # phi = sum b_j v^(p0+j-1)
        antideriv = b / exps                 # S(v) = sum antideriv_j v^exps_j
        subtracted = np.array([math.fsum(antideriv * v ** exps) for v in grid])
        for p, c in zip(exps, -antideriv):
            exponent = p if label == "delta" else -p
            terms.append(StrippedTerm(label, float(exponent), float(c)))
        # coefficient uncertainty and truncation propagated into S
        fit_err = np.array([math.fsum(db * v ** exps / np.abs(exps))
                            + resid * v ** side.p0 / max(abs(side.p0), 1.0) for v in grid])
        quad_err = quad_err + fit_err

    estimates = values + subtracted
    weights = 1.0 / np.maximum(np.abs(values), 1.0)
    finite = math.fsum(weights * estimates) / math.fsum(weights)
    roundoff = 8.0 * np.finfo(float).eps * (np.abs(values) + np.abs(subtracted))
    spread = float(np.max(np.abs(estimates - finite)))
    noise = float(math.fsum(weights * (quad_err + roundoff)) / math.fsum(weights))
    return finite, terms, spread + noise, estimates


def _check_grid(grid, name):
    arr = np.asarray(sorted(float(g) for g in grid), dtype=float)
    if arr.size < 3:
        raise ValueError(f"{name} grid needs at least 3 points")
    if not np.all(np.isfinite(arr)) or np.any(arr <= 0):
        raise ValueError(f"{name} grid must be strictly positive and finite")
    if np.any(np.diff(arr) <= 0):
        raise ValueError(f"{name} grid values must be distinct")
    return arr


def extract_finite_part(
    spec: RadialIntegrandSpec,
    d_half_shift: float = 0.0,
    delta_grid: Sequence[float] | None = None,
    K_grid: Sequence[float] | None = None,
) -> ExtractionResult:
    """Finite part of ``int_delta^K h(y/m) (y/m)**a dy/m`` with a = exponent + d_half_shift.

    The stripped terms are powers of delta/m and K/m; every fitted term is
    subtracted, including those that vanish as the cutoffs are removed.

    Parameters
    ----------
    spec : RadialIntegrandSpec
        Integrand family, power and scale m.
    d_half_shift : float
        Added to ``spec.exponent``; ``-0.5`` realises the d -> d - 1
        substitution used when an external momentum removes one power of p.
    delta_grid, K_grid : sequence of float
        IR and UV cutoffs in the integration variable y; at least three
        each, with ``max(delta_grid) < scale < min(K_grid)``.

    Raises
    ------
    ExtractionError
        If a scale exponent coincides with 0 (logarithmic case) or the
        expansion fit is ill-conditioned.
    """
    a = float(spec.exponent) + float(d_half_shift)
    m = spec.scale
    # defaults are in units of the scale, explicit grids in units of y
    deltas = (np.array(DEFAULT_DELTA_GRID) if delta_grid is None
              else _check_grid(delta_grid, "delta") / m)
    ks = np.array(DEFAULT_K_GRID) if K_grid is None else _check_grid(K_grid, "K") / m
    if deltas[-1] >= 1.0 or ks[0] <= 1.0:
        raise ValueError("need max(delta_grid) < scale < min(K_grid)")
    ir, uv = _sides(spec, a)
    c_ir, terms_ir, err_ir, est_ir = _extract_side(ir, deltas, "delta")
    c_uv, terms_uv, err_uv, est_uv = _extract_side(uv, 1.0 / ks[::-1], "K")
    return ExtractionResult(
        finite_part=c_ir + c_uv,
        stripped_terms=tuple(terms_ir + terms_uv),
        error_estimate=err_ir + err_uv,
        per_point={"delta": tuple(est_ir), "K": tuple(est_uv[::-1])},
    )


def closed_form_finite_part(spec: RadialIntegrandSpec, d: float | None = None) -> float:
    """Analytic finite part of ``int_0^inf u^a h(u) du`` with a = spec.exponent.

    * PowerOverOnePlus: Gamma(a+1) Gamma(-a) = pi / sin(pi (a+1)); with
      a = d/2 - 1 this is Gamma(d/2) Gamma(1 - d/2).
    * PowerExp: Gamma(a+1).
    * PurePower: 0 (scaleless).

    If ``d`` is given it must match ``spec.exponent == d/2 - 1``.
    """
    a = float(spec.exponent)
    if d is not None and abs(a - (0.5 * float(d) - 1.0)) > 1e-12 * max(1.0, abs(a)):
        raise ValueError(f"exponent {a!r} does not correspond to d = {d!r}")
    if spec.kind is IntegrandKind.PURE_POWER:
        return 0.0
    if spec.kind is IntegrandKind.POWER_EXP:
        if is_pole(a + 1.0):
            raise PoleError(f"Gamma({a + 1.0!r}) is a pole: logarithmic case")
        return gamma(a + 1.0)
    s = sinpi(a + 1.0)
    if s == 0.0:
        raise PoleError(f"Gamma(a+1)Gamma(-a) has a pole at a = {a!r} (even-integer d)")
    return math.pi / s


def convergent_integral(spec: RadialIntegrandSpec, tol: float = 1e-13) -> QuadratureResult:
    """Direct quadrature of ``int_0^inf u^a h(u) du`` when it converges.

    The range is split at u = 1 and each power singularity is removed by a
    substitution, u = s^(1/(a+1)) on (0, 1] and, for h = 1/(1+u),
    1/u = s^(1/(-a)) on [1, inf), so exponents close to the convergence
    limits stay accurate.
    """
    a = float(spec.exponent)
    converges_ir = a > -1.0
    converges_uv = spec.kind is IntegrandKind.POWER_EXP or (
        spec.kind is IntegrandKind.POWER_OVER_ONE_PLUS and a < 0.0)
    if not (converges_ir and converges_uv):
        raise ExtractionError(f"int_0^inf does not converge for {spec}")
    h = _shape(spec.kind)
    p = a + 1.0
    ir = integrate_finite(lambda s: h(s ** (1.0 / p)) / p, 0.0, 1.0, tol)
    if spec.kind is IntegrandKind.POWER_EXP:
        uv = integrate_semi_infinite(lambda u: np.exp(a * np.log(u) - u), 1.0, tol)
    else:
        q = -a
        uv = integrate_finite(lambda s: 1.0 / (q * (1.0 + s ** (1.0 / q))), 0.0, 1.0, tol)
    return QuadratureResult(ir.value + uv.value, ir.error_estimate + uv.error_estimate,
                            ir.evaluations + uv.evaluations)
