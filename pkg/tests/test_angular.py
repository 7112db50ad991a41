import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dimkit.angular import (
    beta_kernel,
    sin_power,
    sin_power_cos,
    sin_power_over_one_minus_cos,
    sin_power_over_one_minus_cos_duplication,
)
from dimkit.errors import DivergenceError
from dimkit.quadrature import integrate_finite

from conftest import rel_err


def kernel_quad(a, b):
    # endpoint distances: xc < 0 is -(1+z) on the left half, xc > 0 is 1-z on the right
    def f(z, xc):
        left = xc < 0
        one_plus = np.where(left, -xc, 2.0 - xc)
        one_minus = np.where(left, 2.0 + xc, xc)
        return one_minus ** a * one_plus ** b

    return integrate_finite(f, -1.0, 1.0, 1e-14, complement=True).value


@given(st.floats(-0.9, 6), st.floats(-0.9, 6))
@settings(max_examples=100, deadline=None)
def test_beta_kernel_matches_quadrature(a, b):
    exact = 2 ** (a + b + 1) * mpmath.beta(a + 1, b + 1)
    assert rel_err(beta_kernel(a, b), exact) < 1e-12
    assert rel_err(kernel_quad(a, b), exact) < 1e-11


def test_beta_kernel_divergent():
    with pytest.raises(DivergenceError):
        beta_kernel(-1.0, 0.5)


@pytest.mark.parametrize("a, want", [(0.0, math.pi), (1.0, 2.0), (2.0, math.pi / 2),
                                     (-0.5, 5.244115108584239)])
def test_sin_power(a, want):
    assert rel_err(sin_power(a), want) < 1e-14


def test_sin_power_cos_cross_checks():
    t = sin_power_cos(-1.0)
    assert rel_err(t.term1, -math.pi) < 1e-12 and rel_err(t.term2, math.pi) < 1e-12
    assert t.total == 0.0
    t = sin_power_cos(-2.0)
    assert rel_err(t.term1, -2.0) < 1e-14 and rel_err(t.term2, 2.0) < 1e-14


@given(st.floats(-9, -0.01))
@settings(max_examples=200)
def test_sin_power_cos_vanishes(d):
    t = sin_power_cos(d)
    assert abs(t.total) <= 1e-12 * max(abs(t.term1), abs(t.term2))


def test_sin_power_cos_terms_against_mpmath():
    d = mpmath.mpf(-2.5)
    term1 = -2 ** (-d) * mpmath.gamma(-d / 2) * mpmath.gamma(1 - d / 2) / mpmath.gamma(1 - d)
    term2 = 2 ** (-d - 1) * mpmath.gamma(-d / 2) ** 2 / mpmath.gamma(-d)
    t = sin_power_cos(-2.5)
    assert rel_err(t.term1, term1) < 1e-13 and rel_err(t.term2, term2) < 1e-13


def half_angle_quad(d):
    e = -d - 1
    res = integrate_finite(lambda p: 2.0 ** e * np.sin(p) ** (e - 2) * np.cos(p) ** e,
                           0.0, 0.5 * math.pi, 1e-14)
    return res.value


@pytest.mark.parametrize("d, want", [(-3.0, math.pi), (-4.0, 2.0)])
def test_over_one_minus_cos_elementary(d, want):
    assert rel_err(sin_power_over_one_minus_cos(d), want) < 1e-14


@given(st.floats(-9, -2.05))
@settings(max_examples=60, deadline=None)
def test_over_one_minus_cos_vs_quadrature_and_duplication(d):
    beta_form = sin_power_over_one_minus_cos(d)
    assert rel_err(half_angle_quad(d), beta_form) < 1e-12
    assert rel_err(sin_power_over_one_minus_cos_duplication(d), beta_form) < 1e-12


def test_quoted_duplication_variant_is_off():
    # the variant with an extra -(1+d)/2 only agrees at d = -3
    for d in (-2.5, -3.3, -5.1):
        quoted = -0.5 * (1 + d) * sin_power_over_one_minus_cos_duplication(d)
        assert rel_err(quoted, half_angle_quad(d)) > 0.1


def test_over_one_minus_cos_divergent():
    with pytest.raises(DivergenceError):
        sin_power_over_one_minus_cos(-2.0)
