"""Gegenbauer / Kummer special-function tests.

Polynomial claims are checked against an exact-rational oracle built from the
hypergeometric series expansion; the package's float recurrence must agree
with the oracle's correctly rounded values.  Derivatives are cross-checked by
central differences, normalizations by an adaptive integrator that shares
nothing with the package's quadrature rules.
"""

import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from dcoulomb import (
    GegenbauerParam,
    associated_gegenbauer,
    gegenbauer,
    gegenbauer_derivative,
    gegenbauer_ode_residual,
    kummer_m,
    normalize_angular_factor,
    rule_for_degree,
)

X_GRID = np.linspace(-0.95, 0.95, 50)


# ======================================================================
# Rational oracles
# ======================================================================

def _rising(a: Fraction, r: int) -> Fraction:
    out = Fraction(1)
    for t in range(r):
        out *= a + t
    return out


def _series_coefficients(l: int, alpha: Fraction) -> dict:
    """Exact coefficients of C_l^(alpha) from the closed-form expansion."""
    coeffs = {}
    for m in range(l // 2 + 1):
        deg = l - 2 * m
        coeffs[deg] = ((-1) ** m * _rising(alpha, l - m)
                       / (math.factorial(m) * math.factorial(deg))
                       * Fraction(2) ** deg)
    return coeffs


def _series_eval(l: int, alpha: Fraction, x: Fraction) -> Fraction:
    return sum(c * x ** deg for deg, c in _series_coefficients(l, alpha).items())


def _recurrence_eval(l: int, alpha: Fraction, x: Fraction) -> Fraction:
    prev, cur = Fraction(1), 2 * alpha * x
    if l == 0:
        return prev
    for deg in range(2, l + 1):
        prev, cur = cur, (2 * x * (deg + alpha - 1) * cur
                          - (deg + 2 * alpha - 2) * prev) / deg
    return cur


RATIONAL_X = [Fraction(i, 8) for i in range(-8, 9)]
ALPHAS = [Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(2)]


def test_recurrence_matches_series_oracle_exactly():
    for alpha in ALPHAS:
        for l in range(7):
            for x in RATIONAL_X:
                assert _recurrence_eval(l, alpha, x) == _series_eval(l, alpha, x)


def test_float_evaluation_matches_rational_oracle():
    for alpha in ALPHAS:
        for l in range(7):
            exact = [float(_series_eval(l, alpha, x)) for x in RATIONAL_X]
            got = gegenbauer(l, float(alpha), np.array(
                [float(x) for x in RATIONAL_X]))
            np.testing.assert_allclose(got, exact, rtol=1e-13, atol=1e-13)


# ======================================================================
# gegenbauer basics
# ======================================================================

def test_gegenbauer_frozen_examples():
    for x in (-1.0, 0.0, 0.5, 1.0):
        assert gegenbauer(2, 0.5, x) == pytest.approx((3 * x * x - 1) / 2,
                                                      rel=1e-14, abs=1e-15)
    assert gegenbauer(1, 1.0, 0.3) == pytest.approx(0.6, rel=1e-15)
    assert gegenbauer(0, 2.25, -0.7) == 1.0


def test_gegenbauer_scalar_and_array_transparent():
    xs = np.array([-0.5, 0.0, 0.5])
    vec = gegenbauer(3, 1.5, xs)
    assert vec.shape == xs.shape
    for x, v in zip(xs, vec):
        assert gegenbauer(3, 1.5, float(x)) == v


def test_gegenbauer_domain_errors():
    with pytest.raises(ValueError):
        gegenbauer(2, 0.5, 1.2)
    with pytest.raises(ValueError):
        gegenbauer(2, -0.5, 0.0)
    with pytest.raises(ValueError):
        gegenbauer(-1, 0.5, 0.0)


@given(l=st.integers(0, 10), x=st.floats(-1.0, 1.0))
@settings(max_examples=200)
def test_gegenbauer_parity_and_legendre_bound(l, x):
    val = gegenbauer(l, 0.5, x)
    mirrored = gegenbauer(l, 0.5, -x)
    assert mirrored == pytest.approx((-1.0) ** l * val, rel=1e-12, abs=1e-12)
    assert abs(val) <= 1.0 + 1e-12  # Legendre polynomials are bounded by 1


# ======================================================================
# derivative ladder and associated functions
# ======================================================================

def test_derivative_ladder_against_central_differences():
    h = 1e-5
    for alpha in (0.5, 1.0, 2.0):
        for l in range(1, 7):
            for m in range(1, min(l, 3) + 1):
                for x in (-0.6, -0.1, 0.4, 0.8):
                    lower = gegenbauer_derivative(l, alpha, m - 1, x - h)
                    upper = gegenbauer_derivative(l, alpha, m - 1, x + h)
                    numeric = (upper - lower) / (2 * h)
                    exact = gegenbauer_derivative(l, alpha, m, x)
                    assert numeric == pytest.approx(exact, rel=1e-6, abs=1e-6)


def test_derivative_of_first_order_is_ladder_step():
    for x in np.linspace(-0.9, 0.9, 7):
        assert gegenbauer_derivative(4, 1.0, 1, x) == pytest.approx(
            2.0 * gegenbauer(3, 2.0, x), rel=1e-13)


def test_associated_top_order_shape():
    # m = l: the l-th derivative is constant, so F is a pure (1-x^2)^(l/2)
    xs = np.linspace(-0.8, 0.8, 9)
    for l, alpha in [(1, 0.5), (2, 1.0), (3, 1.5)]:
        vals = associated_gegenbauer(GegenbauerParam(l, alpha, l), xs)
        ratio = vals / (1 - xs ** 2) ** (l / 2)
        np.testing.assert_allclose(ratio, ratio[0], rtol=1e-12)


def test_associated_legendre_shape_and_p1():
    xs = np.linspace(-0.9, 0.9, 11)
    vals = associated_gegenbauer(GegenbauerParam(2, 0.5, 1), xs)
    np.testing.assert_allclose(vals, 3.0 * xs * np.sqrt(1 - xs ** 2),
                               rtol=1e-13)
    assert associated_gegenbauer(GegenbauerParam(1, 0.5, 0), 0.7) == \
        pytest.approx(0.7, rel=1e-15)


def test_associated_positive_near_one():
    # documented convention: positive as x -> 1^- (no alternating phase)
    for l, m, alpha in [(3, 1, 0.5), (4, 2, 1.0), (5, 3, 1.5)]:
        assert associated_gegenbauer(GegenbauerParam(l, alpha, m), 0.999) > 0


def test_param_validation():
    with pytest.raises(ValueError):
        GegenbauerParam(2, 0.5, 3)  # m > l is an explicit error
    with pytest.raises(ValueError):
        GegenbauerParam(-1, 0.5, 0)
    with pytest.raises(ValueError):
        GegenbauerParam(2, -0.6, 0)
    with pytest.raises(ValueError):
        GegenbauerParam(2, 0.5, -1)


# ======================================================================
# normalization
# ======================================================================

def _norm_rule(p: GegenbauerParam):
    power = p.m + p.alpha - 0.5
    half = abs(power - round(power)) > 1e-9
    absorbed = int(round(power - (0.5 if half else 0.0)))
    return rule_for_degree(2 * (p.l - p.m) + 2 * absorbed, half)


def test_normalize_frozen_values():
    n00 = normalize_angular_factor(GegenbauerParam(0, 0.5, 0),
                                   rule_for_degree(0))
    assert n00 == pytest.approx(1 / math.sqrt(2), rel=1e-14)
    n10 = normalize_angular_factor(GegenbauerParam(1, 0.5, 0),
                                   rule_for_degree(2))
    assert n10 == pytest.approx(math.sqrt(1.5), rel=1e-14)


def test_normalized_self_inner_product_is_one():
    for alpha in (0.5, 1.0, 1.5, 2.0, 2.5):
        for l in range(4):
            for m in range(l + 1):
                p = GegenbauerParam(l, alpha, m)
                rule = _norm_rule(p)
                n = normalize_angular_factor(p, rule)

                def integrand(x, p=p, n=n):
                    return ((n * associated_gegenbauer(p, x)) ** 2
                            * (1 - x * x) ** (p.alpha - 0.5))

                # independent adaptive integration, no package quadrature
                total, err = quad(integrand, -1.0, 1.0, limit=200)
                assert total == pytest.approx(1.0, abs=max(1e-9, 10 * err))


def test_weighted_orthogonality():
    for alpha, m in [(0.5, 0), (0.5, 1), (1.0, 0), (1.0, 2), (1.5, 1)]:
        power = m + alpha - 0.5
        half = abs(power - round(power)) > 1e-9
        absorbed = int(round(power - (0.5 if half else 0.0)))
        rule = rule_for_degree(2 * 5 + 2 * absorbed, half)
        for l_a in range(m, 6):
            for l_b in range(m, 6):
                pa, pb = GegenbauerParam(l_a, alpha, m), \
                    GegenbauerParam(l_b, alpha, m)
                vals = (gegenbauer_derivative(l_a, alpha, m, rule.nodes)
                        * gegenbauer_derivative(l_b, alpha, m, rule.nodes)
                        * (1 - rule.nodes ** 2) ** absorbed)
                na = normalize_angular_factor(pa, rule)
                nb = normalize_angular_factor(pb, rule)
                overlap = na * nb * float(np.dot(rule.weights, vals))
                expected = 1.0 if l_a == l_b else 0.0
                assert abs(overlap - expected) < 1e-10


def test_normalize_refuses_insufficient_rule():
    with pytest.raises(ValueError):
        normalize_angular_factor(GegenbauerParam(5, 0.5, 0),
                                 rule_for_degree(4))
    with pytest.raises(ValueError):
        # half-integer leftover power with a plain rule
        normalize_angular_factor(GegenbauerParam(2, 1.0, 0),
                                 rule_for_degree(10, half_weight=False))


# ======================================================================
# kummer_m
# ======================================================================

def test_kummer_frozen_cases():
    assert kummer_m(0, 3.7, 12.3) == 1.0
    for x in (-2.0, 0.0, 0.5, 3.0):
        assert kummer_m(-1, 2, x) == pytest.approx(1 - x / 2, rel=1e-15,
                                                   abs=1e-15)
    for a in (0.5, 1.0, 2.5):
        for x in (-5.0, -1.0, 0.3, 5.0):
            assert kummer_m(a, a, x) == pytest.approx(math.exp(x), rel=1e-12)


def test_kummer_terminating_matches_rational_horner():
    for j in range(6):
        for c in (2, 5, Fraction(7, 2)):
            for x in RATIONAL_X:
                exact = sum(
                    _rising(Fraction(-j), t) * x ** t
                    / (_rising(Fraction(c), t) * math.factorial(t))
                    for t in range(j + 1))
                got = kummer_m(-j, float(c), float(x))
                # abs floor covers cancellation: individual terms are O(1)
                assert got == pytest.approx(float(exact), rel=1e-13,
                                            abs=1e-13)


def test_kummer_terminating_is_degree_j_polynomial():
    xs = np.linspace(-3, 3, 9)
    vals = [kummer_m(-3, 2.0, x) for x in xs]
    coeffs = np.polyfit(xs, vals, 3)
    recon = np.polyval(coeffs, xs)
    np.testing.assert_allclose(recon, vals, rtol=1e-10, atol=1e-12)


def test_kummer_pole_and_region_guards():
    with pytest.raises(ValueError):
        kummer_m(0.5, 0.0, 1.0)
    with pytest.raises(ValueError):
        kummer_m(-3, -2.0, 1.0)  # series hits the pole before terminating
    with pytest.raises(ValueError):
        kummer_m(0.5, 2.0, 100.0)  # non-terminating outside validated region
    assert kummer_m(-1, -2.0, 1.0) == pytest.approx(1.5)  # terminates first
    assert kummer_m(-1, 2.0, 100.0) == pytest.approx(-49.0)


# ======================================================================
# ODE residual
# ======================================================================

def test_residual_examples_and_trivial_case():
    scale = np.max(np.abs(gegenbauer(2, 0.5, X_GRID)))
    assert abs(gegenbauer_ode_residual(GegenbauerParam(2, 0.5, 0), 0.4)) \
        <= 1e-12 * scale
    p = GegenbauerParam(3, 1.0, 2)
    scale = np.max(np.abs(associated_gegenbauer(p, X_GRID)))
    assert abs(gegenbauer_ode_residual(p, -0.2)) <= 1e-10 * scale
    for alpha in (0.5, 1.0, 3.0):
        assert gegenbauer_ode_residual(GegenbauerParam(0, alpha, 0), 0.3) == 0.0


def test_residual_small_relative_to_function_scale():
    # every ladder level up to alpha = 7/2, all orders, 50 interior points
    for k in range(2, 9):
        alpha = (k - 1) / 2.0
        for l in range(9):
            for m in range(l + 1):
                p = GegenbauerParam(l, alpha, m)
                res = np.max(np.abs(gegenbauer_ode_residual(p, X_GRID)))
                scale = np.max(np.abs(associated_gegenbauer(p, X_GRID)))
                assert res <= 1e-9 * scale


def test_residual_domain_errors():
    with pytest.raises(ValueError):
        gegenbauer_ode_residual(GegenbauerParam(2, 0.5, 0), 1.0)
    with pytest.raises(ValueError):
        gegenbauer_ode_residual(GegenbauerParam(2, 0.5, 0), -1.0)
