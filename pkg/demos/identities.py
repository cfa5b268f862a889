"""Check a few contiguous relations and difference formulas, then the whole catalog.

Run with ``python demos/identities.py``.
"""
from __future__ import annotations

from collections import Counter

from discrete_appell import DiscreteParams, EvalPoint, ParameterSet, Variant, run_suite
from discrete_appell.identities import check_diff_formula, check_ladder, check_recursion, generate_ladder_relations

params = ParameterSet(1.2, 0.8, 1.4, 2.1, 2.3)
d = DiscreteParams.v1(3, 2, 1, 1)
point = EvalPoint(0.2, 0.25)

for res in (
    check_diff_formula("Eq4_1", 1, params, d, point),
    check_diff_formula("theta_r", 2, params, d, point),
    check_recursion("a_plus_s", 2, params, d, point),
):
    print(f"{str(res.id):<36} lhs={res.lhs:.12g} rhs={res.rhs:.12g} rel={res.rel_residual:.1e}")

relations = generate_ladder_relations("Difference", Variant.V1)
print(f"\n{len(relations)} difference ladder relations for V1, e.g.")
for ident in relations[10:13]:
    res = check_ladder(ident, params, d, point)
    print(f"  {str(ident):<40} rel={res.rel_residual:.1e}")

report = run_suite()
by_family = Counter((r.id.family.value, r.passed) for r in report.results)
print(f"\nfull suite: {report.summary}")
for (family, passed), n in sorted(by_family.items()):
    print(f"  {family:<22} {'pass' if passed else 'FAIL'} {n}")
