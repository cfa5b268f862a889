"""Executable identity catalog for the discrete F2 functions.

Each ``check_*`` function evaluates both sides of one identity at one point and
returns an IdentityCheckResult.  ``run_suite`` enumerates the whole catalog over
a grid of terminating points.

Conventions used throughout (V3 is handled as V1 with k1 = k2):

* the "x slot" is (t1, k1) for V1 and (t, k) for V2; the "y slot" is (t2, k2)
  for V1 and again (t, k) for V2;
* D(t, k, r) = (-1)^(rk) (-t)_(rk) is the falling factor of ``discrete_factor``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field, replace
from typing import Callable, Iterable, Optional, Sequence, Union

import numpy as np

from .appell import (
    DiscreteParams,
    EvalPoint,
    HumbertKind,
    ParameterSet,
    check_humbert_limit,
    eval_discrete_f2,
    eval_f2,
    is_terminating,
    kdf_reduction,
)
from .errors import ConfigError, ConstraintError, DiscreteAppellError, PreconditionError
from .gamma import discrete_factor, is_nonpositive_integer, pochhammer
from .operators import (
    IDENTITY,
    DIFFERENCE_EQUATIONS,
    Coord,
    Delta,
    EulerX,
    EulerY,
    OperatorExpr,
    Theta,
    apply,
    appell_function,
    d_dx,
    d_dy,
    falling,
    make_point,
    residual_difference_equation,
)
from .quadrature import IntegralRepId, smoke_point, verify_integral_rep
from .results import Family, IdentityCheckResult, IdentityId, Variant
from .series import SummationConfig, eval_kdf

SUITE_VERSION = "1.0"
TERMINATING_TOL = 1e-10
TRUNCATED_TOL = 1e-8
OUTER_TRUNCATION = 60

DIFF_FORMULAS = ("Eq4_1", "Eq_e32", "theta_r", "phi_r")
DIFF_OP_FORMULAS = ("dX_b1", "dY_b2", "dX_a", "dY_a", "dX_c1", "dY_c2")
FINITE_SUMS = ("e5_1", "e5_2")
INFINITE_SUMS = ("e43", "b1_series", "b2_series")
RECURSIONS = ("a_plus_s", "a_minus_s", "b1_plus_s", "b1_minus_s", "c1_minus_s")
LADDER_TAGS = ("a+", "a-", "b1+", "b1-", "b2+", "b2-", "c1+", "c1-", "c2+", "c2-")
FLAVORS = ("Differential", "Difference")


# -- small helpers -------------------------------------------------------------


def _variant_of(d: DiscreteParams) -> Variant:
    return Variant.V2 if d.variant is Variant.V2 else Variant.V1


def _F(params: ParameterSet, d: DiscreteParams, p: EvalPoint, cfg) -> complex:
    return eval_discrete_f2(params, d, p, cfg).value


def _tolerance(params: ParameterSet, d: DiscreteParams) -> float:
    return TERMINATING_TOL if is_terminating(params, d) else TRUNCATED_TOL


def _record(params: ParameterSet, d: DiscreteParams, p: EvalPoint, **extra) -> dict:
    out = {"params": params.as_dict(), "discrete": d.as_dict(), **p.as_dict()}
    out.update(extra)
    return out


def _slot(d: DiscreteParams, axis: str) -> tuple[str, complex, int]:
    """(slot name, t, k) of the discrete factor attached to the x or y index."""
    d = d.as_v1()
    if d.variant is Variant.V2:
        return "t", d.t, d.k
    if axis == "x":
        return "t1", d.t1, d.k1
    return "t2", d.t2, d.k2


def _shift_slot(d: DiscreteParams, axis: str, delta: complex) -> DiscreteParams:
    d = d.as_v1()
    name, t, _ = _slot(d, axis)
    return d.with_slots(**{name: t + delta})


def _times_F(coef: complex, params: ParameterSet, d: DiscreteParams, p: EvalPoint, cfg) -> complex:
    """coef * F, skipping the evaluation when the falling factor made coef vanish
    (the shifted function is then a non-terminating formal series)."""
    if coef == 0:
        return 0j
    return coef * _F(params, d, p, cfg)


def _check_count(value: int, name: str, minimum: int) -> int:
    if int(value) != value or value < minimum:
        raise PreconditionError(f"{name} must be an integer >= {minimum}, got {value!r}")
    return int(value)


# -- differential and difference formulas ----------------------------------------


def check_diff_formula(
    which: str,
    r: int,
    params: ParameterSet,
    d: DiscreteParams,
    p: EvalPoint,
    cfg: SummationConfig | None = None,
) -> IdentityCheckResult:
    """r-fold difference/differential formula: operator side vs shifted-parameter side.

    ``theta_r``/``phi_r`` use the falling power theta (theta-1)...(theta-r+1),
    which is x^r d^r/dx^r; the plain power theta^r differs for r >= 2.
    """
    r = _check_count(r, "r", 1)
    d1 = d.as_v1()
    a, b1, b2, c1, c2 = params.a, params.b1, params.b2, params.c1, params.c2
    x, y = p.x, p.y
    pt = make_point(d1, p)
    f = appell_function(params, d1, cfg)
    family = Family.DIFF_FORMULA if which in DIFF_FORMULAS else Family.DIFF_OP_FORMULA
    notes = ""

    if which in ("Eq4_1", "Eq_e32"):
        if d1.variant is not Variant.V1:
            raise PreconditionError(f"{which} is stated for the V1 function only")
        axis = "x" if which == "Eq4_1" else "y"
        slot, _, k = _slot(d1, axis)
        if k != 1:
            raise PreconditionError(f"{which} needs k = 1 in slot {slot}, got {k}")
        lhs = apply(Delta(slot) ** r, f, pt)
        if axis == "x":
            coef = pochhammer(a, r) * pochhammer(b1, r) * x**r / pochhammer(c1, r)
            rhs = coef * _F(params.shift(a=r, b1=r, c1=r), d1, p, cfg)
        else:
            coef = pochhammer(a, r) * pochhammer(b2, r) * y**r / pochhammer(c2, r)
            rhs = coef * _F(params.shift(a=r, b2=r, c2=r), d1, p, cfg)
    elif which in ("theta_r", "phi_r"):
        axis = "x" if which == "theta_r" else "y"
        _, t, k = _slot(d1, axis)
        euler = EulerX() if axis == "x" else EulerY()
        lhs = apply(falling(euler, r), f, pt)
        dshift = _shift_slot(d1, axis, -r * k)
        if axis == "x":
            coef = discrete_factor(t, k, r) * pochhammer(a, r) * pochhammer(b1, r) * x**r / pochhammer(c1, r)
            rhs = _times_F(coef, params.shift(a=r, b1=r, c1=r), dshift, p, cfg)
        else:
            coef = discrete_factor(t, k, r) * pochhammer(a, r) * pochhammer(b2, r) * y**r / pochhammer(c2, r)
            rhs = _times_F(coef, params.shift(a=r, b2=r, c2=r), dshift, p, cfg)
        notes = "falling power of the Euler operator"
    elif which in DIFF_OP_FORMULAS:
        axis = "x" if which.startswith("dX") else "y"
        if (x if axis == "x" else y) == 0:
            raise PreconditionError(f"{which} needs a non-zero {axis}")
        deriv = d_dx() if axis == "x" else d_dy()
        if which == "dX_b1":
            lhs = apply(deriv**r * Coord("x", b1 + r - 1), f, pt)
            rhs = x ** (b1 - 1) * pochhammer(b1, r) * _F(params.shift(b1=r), d1, p, cfg)
        elif which == "dY_b2":
            lhs = apply(deriv**r * Coord("y", b2 + r - 1), f, pt)
            rhs = y ** (b2 - 1) * pochhammer(b2, r) * _F(params.shift(b2=r), d1, p, cfg)
        elif which == "dX_a":
            g = appell_function(params, d1, cfg, argument_map="x_xy")
            lhs = apply(deriv**r * Coord("x", a + r - 1), g, pt)
            rhs = x ** (a - 1) * pochhammer(a, r) * _F(params.shift(a=r), d1, EvalPoint(x, x * y), cfg)
            notes = "function taken at (x, x y)"
        elif which == "dY_a":
            g = appell_function(params, d1, cfg, argument_map="xy_y")
            lhs = apply(deriv**r * Coord("y", a + r - 1), g, pt)
            rhs = y ** (a - 1) * pochhammer(a, r) * _F(params.shift(a=r), d1, EvalPoint(x * y, y), cfg)
            notes = "function taken at (x y, y)"
        elif which == "dX_c1":
            lhs = apply(deriv**r * Coord("x", c1 - 1), f, pt)
            rhs = (-1) ** r * pochhammer(1 - c1, r) * x ** (c1 - r - 1) * _F(params.shift(c1=-r), d1, p, cfg)
        else:
            lhs = apply(deriv**r * Coord("y", c2 - 1), f, pt)
            rhs = (-1) ** r * pochhammer(1 - c2, r) * y ** (c2 - r - 1) * _F(params.shift(c2=-r), d1, p, cfg)
    else:
        raise ValueError(f"unknown formula {which!r}")

    # |F| joins the scale: both sides vanish exactly when r k exceeds t.
    scale = max(abs(lhs), abs(rhs), abs(_F(params, d1, p, cfg)))
    ident = IdentityId(family, _variant_of(d1), f"{which}:r={r}")
    return IdentityCheckResult.from_sides(
        ident, _record(params, d, p, r=r), lhs, rhs, _tolerance(params, d1), notes=notes, scale=scale
    )


# -- summation formulas -------------------------------------------------------------


def check_summation(
    which: str,
    r_or_truncation: int,
    params: ParameterSet,
    d: DiscreteParams,
    p: EvalPoint,
    z: complex = 0.0,
    cfg: SummationConfig | None = None,
) -> IdentityCheckResult:
    """Finite sums (``e5_1``, ``e5_2``; r >= 0) or infinite sums in z (``e43``,
    ``b1_series``, ``b2_series``) truncated after ``r_or_truncation`` outer terms."""
    d1 = d.as_v1()
    a, b1, b2, c1, c2 = params.a, params.b1, params.b2, params.c1, params.c2
    x, y = p.x, p.y
    variant = _variant_of(d1)
    if which in FINITE_SUMS:
        r = _check_count(r_or_truncation, "r", 0)
        axis = "x" if which == "e5_1" else "y"
        _, t, k = _slot(d1, axis)
        if axis == "x":
            lhs = _F(params.shift(b1=r), d1, p, cfg)
        else:
            lhs = _F(params.shift(b2=r), d1, p, cfg)
        terms = []
        for s in range(r + 1):
            ds = _shift_slot(d1, axis, -s * k)
            coef = math.comb(r, s) * pochhammer(a, s) * discrete_factor(t, k, s)
            if axis == "x":
                coef *= x**s / pochhammer(c1, s)
                terms.append(_times_F(coef, params.shift(a=s, b1=s, c1=s), ds, p, cfg))
            else:
                coef *= y**s / pochhammer(c2, s)
                terms.append(_times_F(coef, params.shift(a=s, b2=s, c2=s), ds, p, cfg))
        rhs = sum(terms, 0j)
        scale = max(abs(lhs), abs(rhs), max(abs(v) for v in terms))
        ident = IdentityId(Family.FINITE_SUM, variant, f"{which}:r={r}")
        return IdentityCheckResult.from_sides(
            ident, _record(params, d, p, r=r), lhs, rhs, _tolerance(params, d1), scale=scale
        )

    if which not in INFINITE_SUMS:
        raise ValueError(f"unknown summation formula {which!r}")
    n_terms = _check_count(r_or_truncation, "truncation", 1)
    z = complex(z)
    if not abs(z) < 1:
        raise PreconditionError(f"infinite sums need |z| < 1, got {z}")
    w = 1.0 / (1.0 - z)
    if which == "e43":
        base, key, q = a, "a", EvalPoint(x * w, y * w)
    elif which == "b1_series":
        base, key, q = b1, "b1", EvalPoint(x * w, y)
    else:
        base, key, q = b2, "b2", EvalPoint(x, y * w)
    if not is_terminating(params, d1) and abs(q.x) + abs(q.y) >= 1:
        raise PreconditionError("transformed arguments leave the convergence region")
    terms = []
    coef = 1 + 0j
    for r in range(n_terms):
        if r > 0:
            coef *= (base + r - 1) * z / r
        if coef == 0:
            break
        terms.append(coef * _F(params.shift(**{key: r}), d1, p, cfg))
    lhs = sum(terms, 0j)
    rhs = (1 - z) ** (-base) * _F(params, d1, q, cfg)
    scale = max(abs(lhs), abs(rhs), max(abs(v) for v in terms))
    last = abs(terms[-1]) / scale if terms and scale > 0 else 0.0
    ident = IdentityId(Family.INFINITE_SUM, variant, f"{which}:z={z.real:g}" + (f"{z.imag:+g}i" if z.imag else ""))
    return IdentityCheckResult.from_sides(
        ident,
        _record(params, d, p, z=[z.real, z.imag], outer_terms=n_terms),
        lhs,
        rhs,
        TRUNCATED_TOL,
        notes=f"outer series truncated after {len(terms)} terms, last relative term {last:.1e}",
        scale=scale,
    )


# -- s-step recursions -------------------------------------------------------------


def check_recursion(
    which: str,
    s: int,
    params: ParameterSet,
    d: DiscreteParams,
    p: EvalPoint,
    cfg: SummationConfig | None = None,
) -> IdentityCheckResult:
    """s-step recursion in a, b1 or c1.

    The x-part carries D(t_x, k_x, 1) and the x slot lowered by k_x, the y-part
    the same for the y slot.  ``c1_minus_s`` has an x-part only: lowering c1
    only touches terms with m >= 1.
    """
    s = _check_count(s, "s", 1)
    d1 = d.as_v1()
    a, b1, b2, c1, c2 = params.a, params.b1, params.b2, params.c1, params.c2
    x, y = p.x, p.y
    _, tx, kx = _slot(d1, "x")
    _, ty, ky = _slot(d1, "y")
    dx, dy = _shift_slot(d1, "x", -kx), _shift_slot(d1, "y", -ky)
    Dx, Dy = discrete_factor(tx, kx, 1), discrete_factor(ty, ky, 1)
    base = _F(params, d1, p, cfg)
    terms: list[complex] = [base]
    notes = ""

    if which == "a_plus_s":
        lhs = _F(params.shift(a=s), d1, p, cfg)
        for r in range(1, s + 1):
            terms.append(_times_F(Dx * b1 * x / c1, params.shift(a=r, b1=1, c1=1), dx, p, cfg))
            terms.append(_times_F(Dy * b2 * y / c2, params.shift(a=r, b2=1, c2=1), dy, p, cfg))
    elif which == "a_minus_s":
        lhs = _F(params.shift(a=-s), d1, p, cfg)
        for r in range(s):
            terms.append(_times_F(-Dx * b1 * x / c1, params.shift(a=-r, b1=1, c1=1), dx, p, cfg))
            terms.append(_times_F(-Dy * b2 * y / c2, params.shift(a=-r, b2=1, c2=1), dy, p, cfg))
    elif which == "b1_plus_s":
        lhs = _F(params.shift(b1=s), d1, p, cfg)
        for r in range(1, s + 1):
            terms.append(_times_F(Dx * a * x / c1, params.shift(a=1, b1=r, c1=1), dx, p, cfg))
    elif which == "b1_minus_s":
        lhs = _F(params.shift(b1=-s), d1, p, cfg)
        for r in range(s):
            terms.append(_times_F(-Dx * a * x / c1, params.shift(a=1, b1=-r, c1=1), dx, p, cfg))
    elif which == "c1_minus_s":
        for r in range(0, s + 1):
            if is_nonpositive_integer(c1 - r):
                raise PreconditionError(f"c1 - {r} is a non-positive integer")
        lhs = _F(params.shift(c1=-s), d1, p, cfg)
        for r in range(1, s + 1):
            coef = Dx * a * b1 * x / ((c1 - r) * (c1 - r + 1))
            terms.append(_times_F(coef, params.shift(a=1, b1=1, c1=2 - r), dx, p, cfg))
        notes = "x-part only (lowering c1 leaves the n-sum untouched)"
    else:
        raise ValueError(f"unknown recursion {which!r}")

    rhs = sum(terms, 0j)
    scale = max(abs(lhs), abs(rhs), max(abs(v) for v in terms))
    ident = IdentityId(Family.RECURSION, _variant_of(d1), f"{which}:s={s}")
    return IdentityCheckResult.from_sides(
        ident, _record(params, d, p, s=s), lhs, rhs, _tolerance(params, d1), notes=notes, scale=scale
    )


# -- ladder (contiguous) relations ---------------------------------------------------


@dataclass(frozen=True)
class Ladder:
    """One unit step of one parameter.

    kind "S": s F(shifted) = P F.   kind "O": Q F(shifted) = s F.
    """

    tag: str
    param: str
    step: int
    kind: str


LADDERS = {
    "a+": Ladder("a+", "a", 1, "S"),
    "a-": Ladder("a-", "a", -1, "O"),
    "b1+": Ladder("b1+", "b1", 1, "S"),
    "b1-": Ladder("b1-", "b1", -1, "O"),
    "b2+": Ladder("b2+", "b2", 1, "S"),
    "b2-": Ladder("b2-", "b2", -1, "O"),
    "c1+": Ladder("c1+", "c1", 1, "O"),
    "c1-": Ladder("c1-", "c1", -1, "S"),
    "c2+": Ladder("c2+", "c2", 1, "O"),
    "c2-": Ladder("c2-", "c2", -1, "S"),
}


def _index_operators(flavor: str, d: DiscreteParams) -> tuple[OperatorExpr, OperatorExpr, OperatorExpr]:
    """Operators acting as m, n and m + n on the (m, n) term."""
    if flavor == "Differential":
        th, ph = EulerX(), EulerY()
        return th, ph, th + ph
    if flavor != "Difference":
        raise ValueError(f"unknown flavor {flavor!r}")
    d1 = d.as_v1()
    if d1.variant is Variant.V2:
        if d1.k < 1:
            raise PreconditionError("difference ladders need k >= 1")
        return EulerX(), EulerY(), Theta("t") / d1.k
    if d1.k1 < 1 or d1.k2 < 1:
        raise PreconditionError("difference ladders need k1, k2 >= 1")
    m_op, n_op = Theta("t1") / d1.k1, Theta("t2") / d1.k2
    return m_op, n_op, m_op + n_op


def ladder_data(tag: str, flavor: str, params: ParameterSet, d: DiscreteParams) -> tuple[Ladder, complex, OperatorExpr]:
    """(ladder, scalar s, operator P or Q) of one basic ladder relation."""
    lad = LADDERS[tag]
    m_op, n_op, mn_op = _index_operators(flavor, d)
    v = getattr(params, lad.param)
    index = {"a": mn_op, "b1": m_op, "c1": m_op, "b2": n_op, "c2": n_op}[lad.param]
    if lad.kind == "S":
        # a+, b+: s = v, P = v + idx;  c-: s = v - 1, P = v - 1 + idx
        s = v if lad.step == 1 else v - 1
        return lad, s, index + s
    # a-, b-: Q = v - 1 + idx, s = v - 1;  c+: Q = v + idx, s = v
    s = v - 1 if lad.step == -1 else v
    return lad, s, index + s


def _shifted(params: ParameterSet, lad: Ladder) -> ParameterSet:
    return params.shift(**{lad.param: lad.step})


def pairwise_operators(
    tag1: str, tag2: str, flavor: str, params: ParameterSet, d: DiscreteParams
) -> tuple[OperatorExpr, OperatorExpr]:
    """(op1, op2) with op1 F(L1) - op2 F(L2) = 0, obtained by eliminating F."""
    l1, s1, o1 = ladder_data(tag1, flavor, params, d)
    l2, s2, o2 = ladder_data(tag2, flavor, params, d)
    kinds = l1.kind + l2.kind
    if kinds == "SS":
        return s1 * o2, s2 * o1
    if kinds == "SO":
        return IDENTITY * (s1 * s2), o1 * o2
    if kinds == "OS":
        return o1 * o2, IDENTITY * (s1 * s2)
    return s2 * o1, s1 * o2


def generate_ladder_relations(flavor: str, variant: Variant | str) -> list[IdentityId]:
    """The 10 basic ladder relations and the 45 pairwise eliminations."""
    variant = Variant(variant)
    if variant is Variant.V3:
        variant = Variant.V1
    if flavor == "Differential":
        fam_basic, fam_pair = Family.LADDER_DIFFERENTIAL, Family.PAIRWISE_DIFFERENTIAL
    elif flavor == "Difference":
        fam_basic, fam_pair = Family.LADDER_DIFFERENCE, Family.PAIRWISE_DIFFERENCE
    else:
        raise ValueError(f"unknown flavor {flavor!r}")
    out = [IdentityId(fam_basic, variant, tag) for tag in LADDER_TAGS]
    out += [IdentityId(fam_pair, variant, f"{t1}|{t2}") for t1, t2 in itertools.combinations(LADDER_TAGS, 2)]
    return out


def check_ladder(
    ident: IdentityId,
    params: ParameterSet,
    d: DiscreteParams,
    p: EvalPoint,
    cfg: SummationConfig | None = None,
) -> IdentityCheckResult:
    """Evaluate a basic or pairwise ladder relation via operator application."""
    d1 = d.as_v1()
    flavor = "Differential" if ident.family in (Family.LADDER_DIFFERENTIAL, Family.PAIRWISE_DIFFERENTIAL) else "Difference"
    pt = make_point(d1, p)

    def fn(prm: ParameterSet):
        return appell_function(prm, d1, cfg)

    if ident.family in (Family.LADDER_DIFFERENTIAL, Family.LADDER_DIFFERENCE):
        lad, s, op = ladder_data(ident.detail, flavor, params, d1)
        shifted = _F(_shifted(params, lad), d1, p, cfg)
        if lad.kind == "S":
            lhs, rhs = s * shifted, apply(op, fn(params), pt)
        else:
            lhs, rhs = apply(op, fn(_shifted(params, lad)), pt), s * _F(params, d1, p, cfg)
    elif ident.family in (Family.PAIRWISE_DIFFERENTIAL, Family.PAIRWISE_DIFFERENCE):
        tag1, tag2 = ident.detail.split("|")
        op1, op2 = pairwise_operators(tag1, tag2, flavor, params, d1)
        lhs = apply(op1, fn(_shifted(params, LADDERS[tag1])), pt)
        rhs = apply(op2, fn(_shifted(params, LADDERS[tag2])), pt)
    else:
        raise ValueError(f"{ident} is not a ladder relation")
    ident = replace(ident, variant=_variant_of(d1))
    return IdentityCheckResult.from_sides(ident, _record(params, d, p), lhs, rhs, _tolerance(params, d1))


# -- reductions --------------------------------------------------------------------


REDUCTIONS_V1 = ("k0_vs_F2", "V3_equiv", "KdF:k1=0,k2=0", "KdF:k1=1,k2=0", "KdF:k1=0,k2=1", "KdF:k1=1,k2=1")
REDUCTIONS_V2 = ("k0_vs_F2", "KdF:k=0", "KdF:k=1")
REDUCTION_TOL = 1e-12


def check_reduction(
    which: str,
    params: ParameterSet,
    d: DiscreteParams,
    p: EvalPoint,
    cfg: SummationConfig | None = None,
) -> IdentityCheckResult:
    """Special values of k: F2, the third variant and Kampé de Fériet forms.

    ``d`` supplies the t values; the k values are those named by ``which``.
    """
    d1 = d.as_v1()
    if which == "k0_vs_F2":
        dz = replace(d1, k=0) if d1.variant is Variant.V2 else replace(d1, k1=0, k2=0)
        lhs = _F(params, dz, p, cfg)
        rhs = eval_f2(params, p, cfg).value
    elif which == "V3_equiv":
        if d1.variant is not Variant.V1 or d1.k1 != d1.k2:
            raise PreconditionError("V3_equiv needs a V1 point with k1 = k2")
        lhs = _F(params, d1, p, cfg)
        rhs = _F(params, DiscreteParams.v3(d1.t1, d1.t2, d1.k1), p, cfg)
    elif which.startswith("KdF:"):
        ks = dict(item.split("=") for item in which[4:].split(","))
        if d1.variant is Variant.V2:
            dk = replace(d1, k=int(ks["k"]))
        else:
            dk = replace(d1, k1=int(ks["k1"]), k2=int(ks["k2"]))
        lhs = _F(params, dk, p, cfg)
        spec, X, Y = kdf_reduction(params, dk, p)
        rhs = eval_kdf(spec, X, Y, cfg).value
    else:
        raise ValueError(f"unknown reduction {which!r}")
    ident = IdentityId(Family.REDUCTION, _variant_of(d1), which)
    return IdentityCheckResult.from_sides(ident, _record(params, d, p), lhs, rhs, REDUCTION_TOL)


# -- grid and suite runner --------------------------------------------------------------


@dataclass(frozen=True)
class GridPoint:
    params: ParameterSet
    d: DiscreteParams
    p: EvalPoint

    def as_dict(self) -> dict:
        return _record(self.params, self.d, self.p)


_PARAMS_A = (1.3, 0.7, 1.1, 2.2, 1.9)
_PARAMS_B = (0.9, 1.6, 0.6, 1.7, 2.4)
_GRID_TEMPLATE = (
    (_PARAMS_A, DiscreteParams.v1(4, 3, 1, 1), (0.25, 0.2)),
    (_PARAMS_B, DiscreteParams.v1(4, 3, 2, 2), (0.3, 0.3)),
    (_PARAMS_A, DiscreteParams.v1(3, 2, 1, 2), (0.2, 0.25)),
    (_PARAMS_A, DiscreteParams.v2(4, 1), (0.25, 0.2)),
    (_PARAMS_B, DiscreteParams.v2(4, 2), (0.3, 0.3)),
    (_PARAMS_B, DiscreteParams.v2(3, 1), (0.2, 0.25)),
)


def default_grid(seed: int | None = None) -> list[GridPoint]:
    """Terminating verification points; ``seed`` jitters a, b, c and x, y slightly."""
    rng = None if seed is None else np.random.default_rng(seed)
    out = []
    for prm, d, (x, y) in _GRID_TEMPLATE:
        vals = np.array(prm, dtype=float)
        if rng is not None:
            vals = vals + rng.uniform(-0.05, 0.05, size=5)
            x, y = x * rng.uniform(0.9, 1.0), y * rng.uniform(0.9, 1.0)
        out.append(GridPoint(ParameterSet(*vals), d, EvalPoint(x, y)))
    return out


def reduction_grid(n: int = 10, seed: int = 0) -> list[GridPoint]:
    """Points with terminating t in {2, 3, 4}, k in {0, 1, 2} and |x| + |y| <= 0.6."""
    rng = np.random.default_rng(seed)
    out = []
    for i in range(n):
        prm = ParameterSet(*rng.uniform(0.5, 2.5, size=5))
        t1, t2, t = (int(v) for v in rng.integers(2, 5, size=3))
        k1, k2, k = (int(v) for v in rng.integers(0, 3, size=3))
        s = rng.uniform(0.1, 0.6)
        frac = rng.uniform(0.2, 0.8)
        p = EvalPoint(s * frac, s * (1 - frac))
        d = DiscreteParams.v1(t1, t2, k1, k2) if i % 2 == 0 else DiscreteParams.v2(t, k)
        out.append(GridPoint(prm, d, p))
    return out


@dataclass
class Check:
    id: IdentityId
    point: dict
    run: Callable[[], IdentityCheckResult]
    order: int = 0


def _catalog_for_point(g: GridPoint, cfg) -> list[Check]:
    prm, d, p = g.params, g.d, g.p
    v = _variant_of(d)
    rec = g.as_dict()
    checks: list[Check] = []

    def add(ident: IdentityId, fn: Callable[[], IdentityCheckResult]):
        checks.append(Check(ident, rec, fn))

    for which in DIFF_FORMULAS:
        for r in (1, 2, 3):
            add(IdentityId(Family.DIFF_FORMULA, v, f"{which}:r={r}"),
                lambda w=which, r=r: check_diff_formula(w, r, prm, d, p, cfg))
    for which in DIFF_OP_FORMULAS:
        for r in (1, 2, 3):
            add(IdentityId(Family.DIFF_OP_FORMULA, v, f"{which}:r={r}"),
                lambda w=which, r=r: check_diff_formula(w, r, prm, d, p, cfg))
    for which in FINITE_SUMS:
        for r in (0, 1, 2, 3):
            add(IdentityId(Family.FINITE_SUM, v, f"{which}:r={r}"),
                lambda w=which, r=r: check_summation(w, r, prm, d, p, 0.0, cfg))
    for which in INFINITE_SUMS:
        for z in (0.0, 0.3):
            add(IdentityId(Family.INFINITE_SUM, v, f"{which}:z={z:g}"),
                lambda w=which, z=z: check_summation(w, OUTER_TRUNCATION, prm, d, p, z, cfg))
    for which in RECURSIONS:
        for s in (1, 2, 3):
            add(IdentityId(Family.RECURSION, v, f"{which}:s={s}"),
                lambda w=which, s=s: check_recursion(w, s, prm, d, p, cfg))
    for flavor in FLAVORS:
        for ident in generate_ladder_relations(flavor, v):
            add(ident, lambda i=ident: check_ladder(i, prm, d, p, cfg))
    for which in REDUCTIONS_V2 if v is Variant.V2 else REDUCTIONS_V1:
        add(IdentityId(Family.REDUCTION, v, which), lambda w=which: check_reduction(w, prm, d, p, cfg))
    for kind in HumbertKind:
        add(IdentityId(Family.HUMBERT_LIMIT, v, kind.value),
            lambda k=kind: check_humbert_limit(k, v, prm, d, p, cfg=cfg))
    for which in (("Eq6_V2_x", "Eq6_V2_y") if v is Variant.V2 else ("Eq1_15", "Eq1_16")):
        add(IdentityId(Family.DIFFERENCE_EQ, v, which),
            lambda w=which: residual_difference_equation(w, prm, d, p, cfg))
    return checks


def rule_orders(order: int = 64) -> tuple[int, int, int]:
    """Increasing quadrature orders ending at ``order`` (for the monotonicity check)."""
    order = int(order)
    if order < 8:
        raise ConfigError("quadrature order must be >= 8")
    return (order // 2, (3 * order) // 4, order)


def catalog(
    grid: Sequence[GridPoint] | None = None,
    cfg: SummationConfig | None = None,
    rule_order: int = 64,
) -> list[Check]:
    """Every check of the suite on ``grid`` plus the integral-representation smoke points."""
    orders = rule_orders(rule_order)
    grid = default_grid() if grid is None else list(grid)
    checks: list[Check] = []
    for g in grid:
        checks.extend(_catalog_for_point(g, cfg))
    for rep in IntegralRepId:
        prm, d, p = smoke_point(rep)
        checks.append(Check(
            IdentityId(Family.INTEGRAL_REP, rep.variant, rep.value),
            _record(prm, d, p),
            lambda rep=rep, prm=prm, d=d, p=p: verify_integral_rep(rep, prm, d, p, orders=orders, cfg=cfg),
        ))
    for i, c in enumerate(checks):
        c.order = i
    return checks


IdFilter = Union[Callable[[IdentityId], bool], Iterable[Family], None]


def _as_predicate(filt: IdFilter) -> Callable[[IdentityId], bool]:
    if filt is None:
        return lambda ident: True
    if callable(filt):
        return filt
    fams = {Family(f) for f in filt}
    return lambda ident: ident.family in fams


@dataclass
class SuiteReport:
    results: list[IdentityCheckResult]
    skipped: list[tuple[IdentityId, dict, str]] = field(default_factory=list)

    @property
    def summary(self) -> dict[str, int]:
        n_pass = sum(1 for r in self.results if r.passed)
        return {"pass": n_pass, "fail": len(self.results) - n_pass, "skip": len(self.skipped)}

    @property
    def ok(self) -> bool:
        return self.summary["fail"] == 0


def run_suite(
    filter: IdFilter = None,
    grid: Sequence[GridPoint] | None = None,
    cfg: SummationConfig | None = None,
    rule_order: int = 64,
) -> SuiteReport:
    """Run every catalog check accepted by ``filter``.

    ``filter`` is a predicate on IdentityId or a collection of families (an
    empty collection selects nothing).  Checks whose preconditions fail at a
    grid point are reported as skipped; evaluation errors count as failures.
    Results are ordered by identity and then by grid position.
    """
    pred = _as_predicate(filter)
    results: list[tuple[tuple, IdentityCheckResult]] = []
    skipped: list[tuple[tuple, tuple[IdentityId, dict, str]]] = []
    for c in catalog(grid, cfg, rule_order):
        if not pred(c.id):
            continue
        key = (c.id.sort_key(), c.order)
        try:
            res = c.run()
        except (PreconditionError, ConstraintError) as exc:
            skipped.append((key, (c.id, c.point, str(exc))))
            continue
        except (DiscreteAppellError, ArithmeticError, ValueError) as exc:
            res = IdentityCheckResult(c.id, c.point, complex("nan"), complex("nan"), math.inf, math.inf,
                                      0.0, False, f"evaluation failed: {type(exc).__name__}: {exc}")
        results.append((key, res))
    results.sort(key=lambda kv: kv[0])
    skipped.sort(key=lambda kv: kv[0])
    return SuiteReport([r for _, r in results], [s for _, s in skipped])
