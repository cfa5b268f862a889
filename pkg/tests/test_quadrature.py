from __future__ import annotations

import math

import numpy as np
import pytest
from scipy import integrate

from discrete_appell.appell import DiscreteParams, EvalPoint, ParameterSet, eval_discrete_f2
from discrete_appell.errors import ConfigError, ConstraintError
from discrete_appell.quadrature import (
    MAX_ORDER,
    IntegralRepId,
    constraint_violations,
    eval_integral_rep,
    gauss_jacobi01,
    gauss_laguerre,
    gauss_legendre01,
    smoke_point,
    verify_integral_rep,
)


@pytest.mark.parametrize("order", [1, 8, 32, 64, 128])
def test_legendre_rule_moments(order):
    rule = gauss_legendre01(order)
    assert np.all(rule.weights > 0)
    assert np.all((rule.nodes > 0) & (rule.nodes < 1))
    j = np.arange(2 * order)
    got = np.array([np.sum(rule.weights * rule.nodes**i) for i in j])
    assert np.max(np.abs(got - 1.0 / (j + 1))) <= 1e-13


@pytest.mark.parametrize("order, alpha", [(16, 0.0), (64, 0.0), (64, 1.5), (MAX_ORDER, -0.4)])
def test_laguerre_rule_moments(order, alpha):
    rule = gauss_laguerre(order, alpha)
    assert np.all(rule.weights > 0) and np.all(rule.nodes > 0)
    assert np.max(rule.moment_errors()) <= 1e-11


@pytest.mark.parametrize("p, q", [(0.2, 1.3), (-0.5, 0.0), (2.0, -0.3)])
def test_jacobi_rule_against_scipy_quad(p, q):
    rule = gauss_jacobi01(40, p, q)
    f = np.cos
    ref, _ = integrate.quad(lambda u: u**p * (1 - u) ** q * np.cos(u), 0, 1, limit=200)
    assert abs(rule.integrate(f(rule.nodes)) - ref) < 1e-10


@pytest.mark.parametrize("order", [0, MAX_ORDER + 1, 2.5])
def test_bad_order(order):
    with pytest.raises(ConfigError):
        gauss_legendre01(order)


def test_bad_jacobi_exponent():
    with pytest.raises(ConstraintError):
        gauss_jacobi01(8, -1.0, 0.0)


def test_rules_are_deterministic():
    a, b = gauss_laguerre(48, 0.7), gauss_laguerre(48, 0.7)
    assert np.array_equal(a.nodes, b.nodes) and np.array_equal(a.weights, b.weights)


@pytest.mark.parametrize("rep", list(IntegralRepId))
def test_smoke_points_satisfy_constraints(rep):
    prm, d, p = smoke_point(rep)
    assert constraint_violations(rep, prm, d) == []


@pytest.mark.parametrize("rep", list(IntegralRepId))
def test_representation_matches_series(rep):
    prm, d, p = smoke_point(rep)
    res = verify_integral_rep(rep, prm, d, p, orders=(32, 64))
    assert res.passed, res.notes
    assert res.rel_residual <= 1e-6


def test_euler_example_point():
    prm = ParameterSet(1.1, 1.2, 1.3, 2.5, 2.6)
    d = DiscreteParams.v1(2, 2, 1, 1)
    p = EvalPoint(0.2, 0.15)
    val = eval_integral_rep(IntegralRepId.V1_EULER, prm, d, p, rule_order=64)
    series = eval_discrete_f2(prm, d, p).value
    assert abs(val - series) <= 1e-6 * abs(series)


def test_euler_kernel_normalized_at_origin():
    prm = ParameterSet(1.1, 1.2, 1.3, 2.5, 2.6)
    val = eval_integral_rep(IntegralRepId.V1_EULER, prm, DiscreteParams.v1(2, 2, 1, 1), EvalPoint(0, 0), 32)
    assert abs(val - 1) < 1e-12


def test_laplace_t_needs_negative_real_t():
    # with t1 = 3 the gamma kernel u^(-t1-1) is not integrable at 0
    prm = ParameterSet(1.1, 1.2, 1.3, 2.5, 2.6)
    with pytest.raises(ConstraintError):
        eval_integral_rep(IntegralRepId.V1_LAPLACE_T1, prm, DiscreteParams.v1(3, 2, 1, 1), EvalPoint(0.2, 0.15))


def test_violated_b1_constraint():
    prm = ParameterSet(1.1, -0.2, 1.3, 2.5, 2.6)
    with pytest.raises(ConstraintError):
        verify_integral_rep(IntegralRepId.V1_EULER, prm, DiscreteParams.v1(2, 2, 1, 1), EvalPoint(0.2, 0.15))


def test_wrong_variant_rejected():
    prm, _, p = smoke_point(IntegralRepId.V1_EULER)
    with pytest.raises(ConstraintError):
        eval_integral_rep(IntegralRepId.V1_EULER, prm, DiscreteParams.v2(3, 1), p)


@pytest.mark.parametrize("orders", [(64,), (64, 32), (32, 32)])
def test_order_sequence_validation(orders):
    prm, d, p = smoke_point(IntegralRepId.V1_LAPLACE_A)
    with pytest.raises(ConfigError):
        verify_integral_rep(IntegralRepId.V1_LAPLACE_A, prm, d, p, orders=orders)


def test_residuals_do_not_grow_with_order():
    rep = IntegralRepId.V2_LAPLACE_B1
    prm, d, p = smoke_point(rep)
    series = eval_discrete_f2(prm, d, p).value
    res = [abs(eval_integral_rep(rep, prm, d, p, o) - series) / abs(series) for o in (16, 32, 64)]
    assert res[-1] <= max(2 * res[0], 1e-13)


def test_complex_exponent_converges_slowly():
    # complex kernel exponents are folded into the integrand: still correct,
    # but only algebraically convergent in the order
    rep = IntegralRepId.V1_LAPLACE_A
    prm = ParameterSet(1.1 + 0.3j, 1.2, 1.3, 2.5, 2.6)
    d, p = DiscreteParams.v1(2, 2, 1, 1), EvalPoint(0.2, 0.15)
    series = eval_discrete_f2(prm, d, p).value
    errs = [abs(eval_integral_rep(rep, prm, d, p, o) - series) / abs(series) for o in (32, 128)]
    assert errs[1] < errs[0] < 0.1
    assert math.isfinite(errs[1])
