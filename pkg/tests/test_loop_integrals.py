import math

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dimkit.errors import PoleError, RegimeError
from dimkit.loop_integrals import (
    dot_product_integral,
    external_momentum_integral,
    printed_external_momentum,
    vacuum_bubble,
)

from conftest import rel_err

FACTORS = ("prefactor", "omega", "radial_part", "measure_coefficient", "angular_part", "q")


def product(components):
    value = 1.0
    for key in FACTORS:
        if key in components:
            value *= components[key]
    return value


def mp_bubble(d, m):
    d = mpmath.mpf(d)
    return mpmath.gamma(1 - d / 2) * mpmath.mpf(m) ** (d - 2) / (4 * mpmath.pi) ** (d / 2)


def test_bubble_one_dimension():
    r = vacuum_bubble(1.0, 1.0)
    assert abs(r.closed_form - 0.5) < 1e-12
    assert abs(r.oracle - 0.5) < 1e-12


def test_bubble_three_dimensions():
    r = vacuum_bubble(3.0, 1.0)
    assert rel_err(r.closed_form, -1 / (4 * math.pi)) < 1e-14
    assert r.abs_diff <= r.oracle_error <= 1e-3 * abs(r.closed_form)


def test_bubble_half_dimension():
    assert vacuum_bubble(0.5, 2.0).abs_diff < 1e-8


@given(st.floats(-7.9, 7.9).filter(lambda d: abs(d - 2 * round(d / 2)) > 0.05),
       st.floats(0.1, 10))
@settings(max_examples=60, deadline=None)
def test_bubble_closed_form_matches_mpmath(d, m):
    r = vacuum_bubble(d, m, oracle=False)
    assert r.oracle is None and r.abs_diff is None
    assert rel_err(r.closed_form, mp_bubble(d, m)) < 1e-12
    assert rel_err(product(r.components), r.closed_form) < 1e-14


@given(st.floats(0.2, 1.8), st.floats(0.2, 5))
@settings(max_examples=20, deadline=None)
def test_bubble_convergent_oracle(d, m):
    assert vacuum_bubble(d, m).rel_diff < 1e-8


@given(st.one_of(st.floats(2.1, 3.9), st.floats(-1.9, -0.1)))
@settings(max_examples=10, deadline=None)
def test_bubble_extraction_oracle(d):
    r = vacuum_bubble(d, 1.3)
    assert r.abs_diff <= r.oracle_error


@given(st.floats(-5.9, 5.9).filter(lambda d: abs(d - 2 * round(d / 2)) > 0.05))
@settings(max_examples=30, deadline=None)
def test_bubble_mass_scaling(d):
    ratio = vacuum_bubble(d, 2.7, oracle=False).closed_form / \
        vacuum_bubble(d, 1.0, oracle=False).closed_form
    assert rel_err(ratio, 2.7 ** (d - 2)) < 1e-12


@pytest.mark.parametrize("d", [2.0, 4.0, 0.0, -2.0])
def test_bubble_poles(d):
    with pytest.raises(PoleError):
        vacuum_bubble(d, 1.0)


def test_bubble_rejects_bad_mass():
    with pytest.raises(ValueError):
        vacuum_bubble(1.0, 0.0)


def test_dot_product_cross_check():
    r = dot_product_integral(-1.0, 1.0)
    assert r.closed_form == 0.0
    assert rel_err(r.components["term1"], -math.pi) < 1e-12
    assert rel_err(r.components["term2"], math.pi) < 1e-12


def test_dot_product_zero_momentum():
    assert dot_product_integral(-1.5, 0.0).closed_form == 0.0


@given(st.floats(-6, -0.01).filter(lambda d: abs(d - 2 * round(d / 2)) > 1e-3),
       st.floats(-10, 10))
@settings(max_examples=50)
def test_dot_product_parity(d, q):
    r = dot_product_integral(d, q)
    c = r.components
    scale = abs(c["radial_part"] * c["measure_coefficient"]) * max(abs(c["term1"]),
                                                                  abs(c["term2"]))
    assert abs(r.closed_form) <= 1e-12 * scale * max(abs(q), 1.0)
    assert rel_err(c["radial_part"], 1 / (d - 2)) == 0.0


@pytest.mark.parametrize("d", [0.0, 1.5])
def test_dot_product_regime(d):
    with pytest.raises(RegimeError):
        dot_product_integral(d, 1.0)


def test_external_momentum_angular_component():
    r = external_momentum_integral(-3.0 - 1e-7, 1.0, 1.0, oracle=False)
    assert abs(r.components["angular_part"] - math.pi) < 1e-6
    with pytest.raises(PoleError):
        external_momentum_integral(-3.0, 1.0, 1.0)


def test_external_momentum_example():
    r = external_momentum_integral(-2.5, 2.0, 1.0)
    assert r.rel_diff < 1e-8
    assert rel_err(product(r.components), r.closed_form) < 1e-14


def mp_external(d, k, m):
    d = mpmath.mpf(d)
    c = (2 ** (1 + d) * mpmath.sinpi(d / 2) * mpmath.pi ** (d / 2 - 1) * mpmath.gamma(1 - d)
         * mpmath.rgamma(-d / 2))
    ang = 2 ** (-d - 2) * mpmath.beta(-d / 2 - 1, -d / 2)
    rad = mpmath.gamma((d - 1) / 2) * mpmath.gamma((3 - d) / 2)
    return mpmath.mpf(m) ** (d - 3) / (2 * k * (2 * mpmath.pi) ** d) * rad * c * ang


@given(st.floats(-4 + 1e-6, -2.1).filter(lambda d: abs(d + 3) > 1e-3))
@settings(max_examples=20, deadline=None)
def test_external_momentum_oracle(d):
    r = external_momentum_integral(d, 1.7, 0.6)
    assert r.rel_diff < 1e-8
    assert r.abs_diff <= r.oracle_error


@pytest.mark.parametrize("d", [-2.3, -3.6, -5.5])
def test_external_momentum_against_mpmath(d):
    r = external_momentum_integral(d, 1.3, 0.8, oracle=False)
    assert rel_err(r.closed_form, mp_external(d, 1.3, 0.8)) < 1e-10


@given(st.floats(-7.9, -2.1).filter(lambda d: abs(d - round(d)) > 1e-3))
@settings(max_examples=30, deadline=None)
def test_external_momentum_scaling(d):
    base = external_momentum_integral(d, 1.0, 1.0, oracle=False).closed_form
    scaled_m = external_momentum_integral(d, 1.0, 2.3, oracle=False).closed_form
    scaled_k = external_momentum_integral(d, 3.1, 1.0, oracle=False).closed_form
    assert rel_err(scaled_m, 2.3 ** (d - 3) * base) < 1e-12
    assert rel_err(scaled_k, base / 3.1) < 1e-12


@given(st.floats(-7.9, -2.1).filter(lambda d: abs(d - round(d)) > 1e-3),
       st.floats(0.3, 3))
@settings(max_examples=30, deadline=None)
def test_printed_display_ratio(d, m):
    ours = external_momentum_integral(d, 1.0, m, oracle=False).closed_form
    assert rel_err(printed_external_momentum(d, 1.0, m) / ours, m ** 2 * (-(1 + d) / 2)) < 1e-12


@pytest.mark.parametrize("d", [-1.5, -2.0, -4.0])
def test_external_momentum_regimes(d):
    with pytest.raises(RegimeError):
        external_momentum_integral(d, 1.0, 1.0)
