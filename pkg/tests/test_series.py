from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from discrete_appell.errors import ConfigError, DivergenceError, PoleError
from discrete_appell.series import (
    MAX_DIAGONAL_ENV,
    KdFSpec,
    SeriesStatus,
    SummationConfig,
    eval_kdf,
    sum_double_series,
)


def _zero(m, n):
    return np.zeros(len(m))


def _one(m, n):
    return np.ones(len(m))


def test_all_zero_ratios_terminate_at_one():
    res = sum_double_series(_zero, _zero, 0.4, 0.3)
    assert res.value == 1
    assert res.status is SeriesStatus.TERMINATED
    assert res.tail_estimate == 0


def test_double_geometric_series():
    res = sum_double_series(_one, _one, 0.25, 0.25)
    assert res.status is SeriesStatus.CONVERGED
    assert abs(res.value - 16 / 9) < 1e-13
    assert res.tail_estimate <= 1e-14 * max(1, abs(res.value))


def test_f2_ratios_match_brute_force():
    a = b1 = b2 = 1.0
    c1 = c2 = 2.0

    def rm(m, n):
        return (a + m + n) * (b1 + m) / ((c1 + m) * (m + 1))

    def rn(m, n):
        return (a + m + n) * (b2 + n) / ((c2 + n) * (n + 1))

    res = sum_double_series(rm, rn, 0.3, 0.3)
    ref = oracles.f2_discrete(a, b1, b2, c1, c2, 0.3, 0.3, nmax=160)
    assert oracles.rel_err(res.value, ref) < 1e-12


def test_max_terms_reached_is_reported():
    res = sum_double_series(_one, _one, 0.9, 0.05, SummationConfig(max_diagonal=5))
    assert res.status is SeriesStatus.MAX_TERMS


def test_growth_is_detected():
    def grow(m, n):
        return (m + n + 1.0) * 3.0

    res = sum_double_series(grow, grow, 0.5, 0.0)
    assert res.status is SeriesStatus.DIVERGENT


@pytest.mark.parametrize(
    "kwargs", [dict(rel_tolerance=0), dict(max_diagonal=0), dict(divergence_window=0)]
)
def test_config_invariants(kwargs):
    with pytest.raises(ConfigError):
        SummationConfig(**kwargs)


def test_env_override(monkeypatch):
    monkeypatch.setenv(MAX_DIAGONAL_ENV, "17")
    assert SummationConfig.from_env().max_diagonal == 17
    monkeypatch.setenv(MAX_DIAGONAL_ENV, "lots")
    with pytest.raises(ConfigError):
        SummationConfig.from_env()


def test_empty_kdf_is_one():
    assert eval_kdf(KdFSpec((), (), (), (), (), ()), 0, 0).value == 1


@pytest.mark.parametrize(
    "a, b1, b2, c1, c2, x, y",
    [(1.3, 0.7, 1.1, 2.2, 1.9, 0.3, 0.2), (0.4 + 0.3j, 1.5, 0.8, 1.2, 2.7, -0.2, 0.35)],
)
def test_kdf_equals_classical_f2(a, b1, b2, c1, c2, x, y):
    spec = KdFSpec((a,), (b1,), (b2,), (), (c1,), (c2,))
    assert oracles.rel_err(eval_kdf(spec, x, y).value, oracles.appell_f2(a, b1, b2, c1, c2, x, y)) < 1e-12


def test_kdf_terminating_joint_row():
    a, b1, b2, c1, c2, t = 1.2, 0.8, 1.4, 2.1, 2.3, 3
    spec = KdFSpec((a, -t), (b1,), (b2,), (), (c1,), (c2,))
    res = eval_kdf(spec, -0.3, -0.4)
    assert res.status is SeriesStatus.TERMINATED
    ref = oracles.f2_discrete(a, b1, b2, c1, c2, 0.3, 0.4, t=t, k=1, nmax=10)
    assert oracles.rel_err(res.value, ref) < 1e-13


def test_kdf_pole_in_lower_row():
    with pytest.raises(PoleError):
        eval_kdf(KdFSpec((1.0,), (), (), (), (-2.0,), ()), 0.1, 0.0)


def test_kdf_divergence_raises():
    with pytest.raises(DivergenceError):
        eval_kdf(KdFSpec((1.0, 1.0), (1.0,), (1.0,), (), (), ()), 0.5, 0.5)


@settings(max_examples=20, deadline=None)
@given(
    st.floats(0.2, 2.5), st.floats(0.2, 2.5), st.floats(0.2, 2.5), st.floats(0.6, 3.0), st.floats(0.6, 3.0),
    st.floats(0.05, 0.6), st.floats(0.0, 1.0),
)
def test_kdf_vs_oracle_property(a, b1, b2, c1, c2, s, frac):
    x, y = s * frac, s * (1 - frac)
    spec = KdFSpec((a,), (b1,), (b2,), (), (c1,), (c2,))
    got = eval_kdf(spec, x, y).value
    assert oracles.rel_err(got, oracles.appell_f2(a, b1, b2, c1, c2, x, y)) < 1e-11
