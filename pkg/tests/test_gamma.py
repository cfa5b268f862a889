from __future__ import annotations

import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from discrete_appell.gamma import (
    PochhammerLadder,
    discrete_factor,
    discrete_factor_factorized,
    gamma,
    is_nonpositive_integer,
    log_gamma,
    pochhammer,
    pochhammer_split,
    rgamma,
)

finite = st.floats(min_value=-6, max_value=6, allow_nan=False, allow_infinity=False)


@pytest.mark.parametrize(
    "z, expected",
    [(1, 0.0), (5, math.log(24)), (0.5, 0.5723649429247001), (2, 0.0), (10, math.log(362880))],
)
def test_log_gamma_known_values(z, expected):
    assert abs(log_gamma(z) - expected) < 1e-13


@pytest.mark.parametrize("z", [0.3, 1.7, 3.2 + 1.1j, -2.5, -0.4 + 2j, 12.5 - 7j, 40 + 0.5j])
def test_gamma_against_mpmath(z):
    assert oracles.rel_err(gamma(z), oracles.gamma(z)) < 1e-13


def test_gamma_reflection_branch_left_half_plane():
    z = -3.7 + 0.2j
    assert oracles.rel_err(gamma(z), oracles.gamma(z)) < 1e-13


@pytest.mark.parametrize("z", [0, -1, -7])
def test_rgamma_zero_at_poles(z):
    assert rgamma(z) == 0
    assert is_nonpositive_integer(z)


@pytest.mark.parametrize("a, n, expected", [(2, 3, 24), (1.7, 0, 1), (-1, 3, 0), (0.5, 2, 0.75)])
def test_pochhammer_examples(a, n, expected):
    assert pochhammer(a, n) == pytest.approx(expected, abs=1e-15)


def test_pochhammer_large_n_uses_gamma_ratio():
    a, n = 0.3 + 0.2j, 150
    assert oracles.rel_err(pochhammer(a, n), oracles.rf(a, n)) < 1e-11


def test_pochhammer_rejects_negative_n():
    with pytest.raises(ValueError):
        pochhammer(1.0, -1)


def test_ladder_recurrence():
    lad = PochhammerLadder.build(0.7 - 0.1j, 12)
    assert lad[0] == 1
    for n in range(11):
        assert lad[n + 1] == pytest.approx(lad[n] * (0.7 - 0.1j + n))
        assert lad[n] == pytest.approx(pochhammer(0.7 - 0.1j, n))


@pytest.mark.parametrize("t, m", [(3.3, 4), (0, 2), (-1.5 + 1j, 3)])
def test_discrete_factor_k0_is_one(t, m):
    assert discrete_factor(t, 0, m) == 1


def test_discrete_factor_examples():
    assert discrete_factor(1, 1, 2) == 0
    assert discrete_factor(5, 2, 1) == 20
    # both computations of (2.5, 2, 3) agree with the falling-factorial oracle
    ref = oracles.falling(2.5, 6)
    assert oracles.rel_err(discrete_factor(2.5, 2, 3), ref) < 1e-14
    assert oracles.rel_err(discrete_factor_factorized(2.5, 2, 3), ref) < 1e-14


@settings(max_examples=60, deadline=None)
@given(finite, finite, st.integers(0, 4), st.integers(0, 6))
def test_discrete_factor_two_forms_agree(tr, ti, k, m):
    t = complex(tr, ti)
    direct = discrete_factor(t, k, m)
    fact = discrete_factor_factorized(t, k, m)
    assert abs(direct - fact) <= 1e-11 * max(1.0, abs(direct))


@settings(max_examples=60, deadline=None)
@given(finite, st.integers(0, 30))
def test_discrete_factor_terminates_for_integer_t(t_int, m):
    t = abs(int(t_int))
    k = 2
    if m * k > t:
        assert discrete_factor(t, k, m) == 0


def test_pochhammer_split_examples():
    assert pochhammer_split(1, 1, 1, 1) == pytest.approx((6, 6, 6))
    a = 0.5
    vals = pochhammer_split(a, 2, 1, 2)
    assert all(abs(v - oracles.rf(a, 5)) < 1e-13 for v in vals)
    for v in pochhammer_split(1.3 + 2j, 3, 4, 0):
        assert v == pytest.approx(pochhammer(1.3 + 2j, 7))


@settings(max_examples=100, deadline=None)
@given(finite, finite, st.integers(0, 20), st.integers(0, 20), st.integers(0, 20))
def test_pochhammer_split_property(ar, ai, m, n, r):
    d, s1, s2 = pochhammer_split(complex(ar, ai), m, n, r)
    scale = max(abs(d), 1e-300)
    assert abs(d - s1) <= 1e-12 * scale + 1e-300
    assert abs(d - s2) <= 1e-12 * scale + 1e-300


def test_log_gamma_recurrence_vectorish():
    zs = np.linspace(0.2, 9.7, 25) + 0.3j
    for z in zs:
        lhs = cmath.exp(log_gamma(z + 1) - log_gamma(z))
        assert abs(lhs - z) < 1e-12 * abs(z)
