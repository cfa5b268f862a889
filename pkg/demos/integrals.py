"""Compare integral representations with the series at increasing quadrature order.

Run with ``python demos/integrals.py``.
"""
from __future__ import annotations

from discrete_appell import DiscreteParams, EvalPoint, ParameterSet, eval_discrete_f2
from discrete_appell.quadrature import IntegralRepId, eval_integral_rep, smoke_point

for rep in IntegralRepId:
    params, d, point = smoke_point(rep)
    series = eval_discrete_f2(params, d, point).value
    errors = [abs(eval_integral_rep(rep, params, d, point, n) - series) / abs(series) for n in (8, 16, 32, 64)]
    print(f"{rep.value:<16} " + "  ".join(f"n={n}: {e:.1e}" for n, e in zip((8, 16, 32, 64), errors)))

# A complex exponent cannot be absorbed into the Laguerre weight, so it stays in
# the integrand and convergence in the order becomes algebraic.
params, d, point = ParameterSet(1.1 + 0.3j, 1.2, 1.3, 2.5, 2.6), DiscreteParams.v1(2, 2, 1, 1), EvalPoint(0.2, 0.15)
series = eval_discrete_f2(params, d, point).value
errors = [abs(eval_integral_rep(IntegralRepId.V1_LAPLACE_A, params, d, point, n) - series) / abs(series)
          for n in (16, 32, 64, 128)]
print("complex a:       " + "  ".join(f"n={n}: {e:.1e}" for n, e in zip((16, 32, 64, 128), errors)))
