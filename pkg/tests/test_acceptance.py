"""Acceptance criteria, one test each, with a PASS/FAIL line per criterion.

Each test measures its own runtime; the summary lines are written to the
terminal even when pytest captures output.
"""
from __future__ import annotations

import time

import numpy as np
import pytest

import oracles
from discrete_appell.appell import (
    DiscreteParams,
    EvalPoint,
    HumbertKind,
    ParameterSet,
    check_humbert_limit,
    eval_discrete_f2,
)
from discrete_appell.errors import DivergenceError, PreconditionError
from discrete_appell.gamma import pochhammer_split
from discrete_appell.identities import (
    REDUCTIONS_V1,
    REDUCTIONS_V2,
    check_reduction,
    default_grid,
    reduction_grid,
    run_suite,
)
from discrete_appell.operators import residual_difference_equation
from discrete_appell.quadrature import IntegralRepId, smoke_point, verify_integral_rep
from discrete_appell.results import Family, Variant
from discrete_appell.series import KdFSpec, SeriesStatus, eval_kdf

TERMINATING = {
    Family.DIFF_FORMULA, Family.DIFF_OP_FORMULA, Family.FINITE_SUM, Family.RECURSION,
    Family.LADDER_DIFFERENTIAL, Family.LADDER_DIFFERENCE, Family.PAIRWISE_DIFFERENTIAL,
    Family.PAIRWISE_DIFFERENCE,
}


@pytest.fixture
def report(capsys):
    def emit(number: int, title: str, ok: bool, detail: str, elapsed: float) -> None:
        with capsys.disabled():
            print(f"\nACCEPTANCE {number} {'PASS' if ok else 'FAIL'}: {title} -- {detail} [{elapsed:.2f} s]")
        assert ok, detail

    return emit


def test_1_reductions(report):
    start = time.perf_counter()
    worst, n, kinds = 0.0, 0, set()
    for g in reduction_grid(10, seed=0):
        names = REDUCTIONS_V2 if g.d.variant is Variant.V2 else REDUCTIONS_V1
        for which in names:
            try:
                res = check_reduction(which, g.params, g.d, g.p)
            except PreconditionError:
                continue
            worst, n = max(worst, res.rel_residual), n + 1
            kinds.add((g.d.variant, which))
    elapsed = time.perf_counter() - start
    expected = {(Variant.V1, w) for w in REDUCTIONS_V1} | {(Variant.V2, w) for w in REDUCTIONS_V2}
    ok = worst <= 1e-12 and kinds == expected and elapsed < 1.0
    report(1, "reductions", ok, f"{n} checks over 10 points, max rel {worst:.2e} (tol 1e-12)", elapsed)


DIFF_EQ_POINTS_V1 = [
    (ParameterSet(1.3, 0.7, 1.1, 2.2, 1.9), DiscreteParams.v1(4, 3, 1, 1), EvalPoint(0.25, 0.2)),
    (ParameterSet(1.3, 0.7, 1.1, 2.2, 1.9), DiscreteParams.v1(4, 3, 2, 2), EvalPoint(0.3, 0.3)),
    (ParameterSet(0.9, 1.6, 0.6, 1.7, 2.4), DiscreteParams.v1(3, 2, 1, 2), EvalPoint(0.2, 0.25)),
    (ParameterSet(0.9, 1.6, 0.6, 1.7, 2.4), DiscreteParams.v1(2, 4, 1, 1), EvalPoint(-0.3, 0.2)),
    (ParameterSet(1.1 + 0.4j, 1.6, 0.6, 1.7, 2.4), DiscreteParams.v1(4, 4, 2, 1), EvalPoint(0.2, 0.3j)),
]
DIFF_EQ_POINTS_V2 = [
    (ParameterSet(1.3, 0.7, 1.1, 2.2, 1.9), DiscreteParams.v2(4, 1), EvalPoint(0.25, 0.2)),
    (ParameterSet(1.3, 0.7, 1.1, 2.2, 1.9), DiscreteParams.v2(4, 2), EvalPoint(0.3, 0.3)),
    (ParameterSet(0.9, 1.6, 0.6, 1.7, 2.4), DiscreteParams.v2(3, 1), EvalPoint(0.2, 0.25)),
    (ParameterSet(0.9, 1.6, 0.6, 1.7, 2.4), DiscreteParams.v2(6, 3), EvalPoint(0.3, -0.2)),
    (ParameterSet(0.9, 1.6, 0.6, 1.7 + 0.5j, 2.4), DiscreteParams.v2(5, 2), EvalPoint(0.1, 0.4)),
]


def test_2_difference_equations(report):
    start = time.perf_counter()
    worst, counts = 0.0, {}
    for names, points in ((("Eq1_15", "Eq1_16"), DIFF_EQ_POINTS_V1), (("Eq6_V2_x", "Eq6_V2_y"), DIFF_EQ_POINTS_V2)):
        for which in names:
            for prm, d, p in points:
                res = residual_difference_equation(which, prm, d, p)
                worst = max(worst, res.rel_residual)
                counts[which] = counts.get(which, 0) + 1
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-8 and len(counts) == 4 and min(counts.values()) >= 5 and elapsed < 5.0
    report(2, "difference-differential equations", ok,
           f"4 equations x {min(counts.values())} points, max rel {worst:.2e} (tol 1e-8)", elapsed)


def test_3_identity_catalog(report):
    catalog_families = TERMINATING | {Family.INFINITE_SUM}
    start = time.perf_counter()
    rep = run_suite(filter=catalog_families, grid=default_grid())
    elapsed = time.perf_counter() - start
    bad = []
    for r in rep.results:
        tol = 1e-10 if r.id.family in TERMINATING else 1e-8
        if not (r.passed and r.rel_residual <= tol):
            bad.append(str(r.id))
    present = {(r.id.family, r.id.variant) for r in rep.results}
    missing = [(f.value, v.value) for f in catalog_families for v in (Variant.V1, Variant.V2) if (f, v) not in present]
    n = len(rep.results)
    ok = not bad and not missing and n > 250 and elapsed < 60.0
    detail = f"{n} checks, {len(bad)} failing, {len(rep.skipped)} not applicable"
    if bad:
        detail += f", first failure {bad[0]}"
    if missing:
        detail += f", missing {missing}"
    report(3, "identity catalog", ok, detail, elapsed)


def test_4_integral_representations(report):
    start = time.perf_counter()
    worst, bad = 0.0, []
    for rep in IntegralRepId:
        prm, d, p = smoke_point(rep)
        res = verify_integral_rep(rep, prm, d, p, orders=(16, 32, 64))
        worst = max(worst, res.rel_residual)
        if not (res.passed and res.rel_residual <= 1e-6):
            bad.append(rep.value)
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 30.0
    report(4, "integral representations", ok,
           f"{len(IntegralRepId)} forms at order 64, max rel {worst:.2e} (tol 1e-6), failing {bad}", elapsed)


def test_5_humbert_limits(report):
    start = time.perf_counter()
    prm, p = ParameterSet(1.3, 0.7, 1.1, 2.2, 1.9), EvalPoint(0.3, 0.2)
    cases = [(Variant.V1, DiscreteParams.v1(3, 2, 1, 1)), (Variant.V1, DiscreteParams.v1(4, 3, 2, 1)),
             (Variant.V2, DiscreteParams.v2(4, 1)), (Variant.V2, DiscreteParams.v2(4, 2))]
    results = [
        check_humbert_limit(kind, v, prm, d, p, eps_sequence=(1e-2, 1e-3, 1e-4))
        for kind in HumbertKind for v, d in cases
    ]
    elapsed = time.perf_counter() - start
    worst = max(r.abs_residual / r.tolerance for r in results)
    ok = all(r.passed for r in results) and elapsed < 5.0
    report(5, "Humbert limits", ok,
           f"{len(results)} checks (psi1, psi2 x V1, V2), worst residual/bound {worst:.2e}", elapsed)


def test_6_oracle_equivalence(report):
    start = time.perf_counter()
    rng = np.random.default_rng(2024)
    worst_kdf = 0.0
    for i in range(20):
        A = tuple(rng.uniform(0.3, 2.0, size=1 + i % 2))
        B, C = (rng.uniform(0.3, 2.0),), (rng.uniform(0.3, 2.0),)
        D = tuple(rng.uniform(1.0, 3.0, size=i % 2))
        E, F = (rng.uniform(0.8, 3.0),), (rng.uniform(0.8, 3.0),)
        # one more joint upper than lower parameter: convergent for |x| + |y| < 1
        s = rng.uniform(0.05, 0.5)
        frac = rng.uniform(0, 1)
        x, y = s * frac, -s * (1 - frac)
        res = eval_kdf(KdFSpec(A, B, C, D, E, F), x, y)
        ref = oracles.kdf_direct(A, B, C, D, E, F, x, y, nmax=110)
        assert res.status in (SeriesStatus.CONVERGED, SeriesStatus.TERMINATED)
        worst_kdf = max(worst_kdf, oracles.rel_err(res.value, ref))
    worst_split = 0.0
    for _ in range(100):
        a = complex(rng.uniform(-5, 5), rng.uniform(-2, 2))
        m, n, r = (int(v) for v in rng.integers(0, 12, size=3))
        direct, left, right = pochhammer_split(a, m, n, r)
        ref = complex(oracles.rf(a, m + n + r))
        scale = max(abs(ref), 1e-300)
        worst_split = max(worst_split, *(abs(v - ref) / scale for v in (direct, left, right)),
                          abs(left - direct) / scale, abs(right - direct) / scale)
    elapsed = time.perf_counter() - start
    ok = worst_kdf <= 1e-12 and worst_split <= 1e-12
    report(6, "oracle equivalence", ok,
           f"KdF 20 points max rel {worst_kdf:.2e}; Pochhammer split 100 points max rel {worst_split:.2e}"
           " (tol 1e-12)", elapsed)


def test_7_divergence_honesty(report):
    start = time.perf_counter()
    prm = ParameterSet(1.3, 0.7, 1.1, 2.2, 1.9)
    outcomes = []
    for d in (DiscreteParams.v1(0.5, 2, 1, 1), DiscreteParams.v1(0.5, 0.5, 1, 1), DiscreteParams.v2(0.5, 1)):
        try:
            value = eval_discrete_f2(prm, d, EvalPoint(0.5, 0.0)).value
            outcomes.append(f"silent value {value!r}")
        except DivergenceError:
            outcomes.append(SeriesStatus.DIVERGENT.value)
    elapsed = time.perf_counter() - start
    ok = all(o == SeriesStatus.DIVERGENT.value for o in outcomes)
    report(7, "divergence honesty", ok, f"k=1, t=0.5, x=0.5, y=0 -> {', '.join(outcomes)}", elapsed)
