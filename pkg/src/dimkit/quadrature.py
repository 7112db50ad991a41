"""
Double-exponential quadrature used as the independent numerical oracle.

Two rules are provided:

* tanh-sinh on a finite interval ``[a, b]``,
* exp-sinh on a half line ``[a, inf)``.

Both handle integrable power-law singularities at the endpoints.  The step
size is halved level by level (re-using all previous nodes) until two
successive estimates agree to the requested tolerance.

Integrands must accept numpy arrays.  When ``complement=True`` the integrand
is called as ``f(x, xc)`` where ``xc`` is the signed distance to the nearest
endpoint: ``xc = a - x`` (<= 0) on the left half and ``xc = b - x`` (>= 0) on
the right half.  For the half-line rule ``xc = a - x``.  Near an endpoint
that is not zero, ``x`` itself is rounded to the endpoint long before the
distance underflows, so singular integrands should be written in terms of
``xc`` there.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.special import expit

from .errors import QuadratureError

__all__ = ["QuadratureResult", "integrate_finite", "integrate_semi_infinite"]

_HALF_PI = 0.5 * math.pi
# nodes closer than this to an endpoint are dropped (double-precision floor)
_TINY = 1e-300
_EPS = np.finfo(float).eps
_MAX_LEVEL = 12
_MIN_LEVEL = 3


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error_estimate: float
    evaluations: int

    def __float__(self):
        return self.value


def _t_max(log_floor: float) -> float:
    # smallest t with pi/2 sinh(t) beyond |log_floor|
    return math.asinh(abs(log_floor) / _HALF_PI)


def _finite_nodes(t, a, b):
    """Abscissae, complement distances and Jacobian for tanh-sinh at t."""
    u = _HALF_PI * np.sinh(t)
    width = b - a
    left = width * expit(2.0 * u)      # x - a
    right = width * expit(-2.0 * u)    # b - x
    jac = 2.0 * width * expit(2.0 * u) * expit(-2.0 * u) * _HALF_PI * np.cosh(t)
    on_left = t < 0
    x = np.where(on_left, a + left, b - right)
    xc = np.where(on_left, -left, right)
    keep = (np.minimum(left, right) > _TINY * max(1.0, abs(width))) & (jac > 0)
    return x[keep], xc[keep], jac[keep]


def _drop_rounded(x, xc, jac, a, b):
    # without complements, nodes that round onto an endpoint carry no information
    keep = (x > a) & (x < b)
    return x[keep], xc[keep], jac[keep]


def _semi_infinite_nodes(t, a):
    u = _HALF_PI * np.sinh(t)
    with np.errstate(over="ignore", under="ignore"):
        dist = np.exp(u)
        jac = dist * _HALF_PI * np.cosh(t)
    keep = (dist > _TINY) & np.isfinite(dist) & np.isfinite(jac) & (dist < 1.0 / _TINY)
    dist = dist[keep]
    return a + dist, -dist, jac[keep]


def _evaluate(f, x, xc, complement):
    with np.errstate(all="ignore"):
        y = f(x, xc) if complement else f(x)
    y = np.broadcast_to(np.asarray(y, dtype=float), x.shape)
    return y


def _run(f, node_fn, t_max, tol, complement, what):
    h = 1.0
    # level 0: all integer multiples of h
    t = np.arange(-math.floor(t_max), math.floor(t_max) + 1, dtype=float)
    total = 0.0
    abs_total = 0.0
    evaluations = 0
    previous = None
    estimate = None
    error = math.inf
    for level in range(_MAX_LEVEL + 1):
        if level > 0:
            h *= 0.5
            n = math.floor(t_max / h)
            k = np.arange(-n, n + 1)
            t = k[k % 2 != 0] * h
        x, xc, jac = node_fn(t)
        y = _evaluate(f, x, xc, complement)
        terms = jac * y
        evaluations += x.size
        if not np.all(np.isfinite(terms)):
            raise QuadratureError(f"{what}: integrand not finite at a quadrature node")
        total += math.fsum(terms)
        abs_total += math.fsum(np.abs(terms))
        estimate = h * total
        roundoff = 10.0 * _EPS * h * abs_total
        if previous is not None:
            error = abs(estimate - previous) + roundoff
            if level >= _MIN_LEVEL and (
                error <= tol * abs(estimate) or abs(estimate - previous) <= roundoff
            ):
                return QuadratureResult(estimate, error, evaluations)
        previous = estimate
    result = QuadratureResult(estimate, error, evaluations)
    raise QuadratureError(
        f"{what}: no convergence after {_MAX_LEVEL} levels "
        f"(estimate {estimate!r}, error {error:.3g})",
        result,
    )


def integrate_finite(
    f: Callable,
    a: float,
    b: float,
    tol: float = 1e-12,
    *,
    complement: bool = False,
) -> QuadratureResult:
    """Integrate ``f`` over ``[a, b]`` with the tanh-sinh rule.

    Parameters
    ----------
    f : callable
        Vectorised integrand, ``f(x)`` or ``f(x, xc)`` (see module docstring).
    a, b : float
        Finite limits with ``a < b``.
    tol : float
        Relative tolerance on the value.
    complement : bool
        Pass endpoint distances to ``f``.

    Raises
    ------
    QuadratureError
        If the level cap is reached; the best estimate is attached.
    """
    a = float(a)
    b = float(b)
    if not (math.isfinite(a) and math.isfinite(b)) or not a < b:
        raise ValueError(f"need finite a < b, got [{a}, {b}]")
    if tol <= 0:
        raise ValueError("tol must be positive")
    t_max = _t_max(math.log(_TINY))
    if complement:
        nodes = lambda t: _finite_nodes(t, a, b)
    else:
        nodes = lambda t: _drop_rounded(*_finite_nodes(t, a, b), a, b)
    return _run(f, nodes, t_max, tol, complement, "integrate_finite")


def integrate_semi_infinite(
    f: Callable,
    a: float,
    tol: float = 1e-12,
    *,
    complement: bool = False,
) -> QuadratureResult:
    """Integrate ``f`` over ``[a, inf)`` with the exp-sinh rule.

    The integrand must decay at least like ``x**(-1-eps)`` or exponentially,
    and may carry an integrable power singularity at ``a``.
    """
    a = float(a)
    if not math.isfinite(a):
        raise ValueError("lower limit must be finite")
    if tol <= 0:
        raise ValueError("tol must be positive")
    t_max = _t_max(math.log(_TINY))
    return _run(f, lambda t: _semi_infinite_nodes(t, a), t_max, tol, complement,
                "integrate_semi_infinite")
