"""Evaluate the discrete F2 variants and watch them reduce to the classical function.

Run with ``python demos/evaluate.py``.
"""
from __future__ import annotations

from discrete_appell import DiscreteParams, EvalPoint, ParameterSet, eval_discrete_f2, eval_f2
from discrete_appell.errors import DivergenceError

params = ParameterSet(a=1.3, b1=0.7, b2=1.1, c1=2.2, c2=1.9)
point = EvalPoint(0.3, 0.2)

res = eval_f2(params, point)
print(f"classical F2: {res.value:.15g} ({res.status.value}, {res.terms_used} terms, tail {res.tail_estimate:.1e})")
for d in (DiscreteParams.v1(3.7, 1.1, 0, 0), DiscreteParams.v2(0.4, 0)):
    print(f"{d.variant.value} with k = 0: {eval_discrete_f2(params, d, point).value:.15g}")

# Non-negative integer t with k >= 1: the series is a finite polynomial.
for d in (DiscreteParams.v1(4, 3, 1, 2), DiscreteParams.v2(4, 2), DiscreteParams.v3(4, 3, 1)):
    res = eval_discrete_f2(params, d, point)
    print(f"{d.variant.value} {d.as_dict()}: {res.value:.15g} ({res.status.value}, {res.terms_used} terms)")

# Non-integer t with k >= 1 gives a formal series: the engine refuses to sum it.
try:
    eval_discrete_f2(params, DiscreteParams.v1(0.5, 2, 1, 1), EvalPoint(0.5, 0.0))
except DivergenceError as exc:
    print("t1 = 0.5, k1 = 1:", exc)
