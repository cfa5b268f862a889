"""Shift operators in the discrete parameters and Euler operators in x, y.

Expressions are immutable trees built with ``+``, ``-``, ``*`` (composition,
right factor applied first), ``/`` (by a scalar) and ``**``::

    T1 = Theta("t1")
    op = T1 * (T1 / k1 + c1 - 1)
    apply(op, f, {"t1": 4, "t2": 3, "x": 0.25, "y": 0.2})

Primitive actions on f(t):

* Delta:  f(t+1) - f(t)
* Rho:    f(t-1)
* Theta:  t (f(t) - f(t-1)), i.e. multiply by t after rho after Delta
* EulerX: x d/dx, EulerY: y d/dy

Euler operators act term-wise on the operand's series when it exposes one
(exact), and by a central difference in log x with one Richardson level
otherwise.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from numbers import Number
from typing import Callable, Optional, Union

import numpy as np

from .appell import DiscreteParams, EvalPoint, ParameterSet, eval_discrete_f2
from .errors import DivergenceError, DomainError, PoleError, PreconditionError
from .gamma import discrete_factor
from .results import Family, IdentityCheckResult, IdentityId, Variant
from .series import SummationConfig, WeightFn

Point = dict
Leaf = Callable[[Point, Optional[WeightFn]], complex]

FD_LOG_STEP = 1e-5


@dataclass(frozen=True)
class EvaluableFunction:
    """A function of (t-slots, x, y) with an optional exact series handle.

    ``series(point, weight)`` must return sum_{m,n} weight(ex, ey) * term,
    where (ex, ey) are the exponents of x and y carried by each term.
    """

    func: Callable[[Point], complex]
    slots: tuple[str, ...] = ()
    series: Optional[Callable[[Point, WeightFn], complex]] = None

    def __call__(self, point: Point) -> complex:
        return self.func(point)


class OperatorExpr:
    def __add__(self, other):
        return Sum((self, as_operator(other)))

    def __radd__(self, other):
        return Sum((as_operator(other), self))

    def __sub__(self, other):
        return Sum((self, Compose(Scalar(-1.0), as_operator(other))))

    def __rsub__(self, other):
        return Sum((as_operator(other), Compose(Scalar(-1.0), self)))

    def __mul__(self, other):
        return Compose(self, as_operator(other))

    def __rmul__(self, other):
        return Compose(as_operator(other), self)

    def __truediv__(self, other):
        if not isinstance(other, Number):
            raise TypeError("operators can only be divided by numbers")
        return Compose(Scalar(1.0 / other), self)

    def __neg__(self):
        return Compose(Scalar(-1.0), self)

    def __pow__(self, r):
        return Power(self, r)


def as_operator(obj) -> OperatorExpr:
    if isinstance(obj, OperatorExpr):
        return obj
    if isinstance(obj, Number):
        return Scalar(complex(obj))
    raise TypeError(f"cannot use {type(obj).__name__} as an operator")


@dataclass(frozen=True, eq=False)
class Scalar(OperatorExpr):
    """Multiplication by a constant or by a function of the point (e.g. of t)."""

    value: Union[complex, Callable[[Point], complex]]
    label: str = ""

    def at(self, point: Point) -> complex:
        return complex(self.value(point)) if callable(self.value) else complex(self.value)


@dataclass(frozen=True, eq=False)
class Coord(OperatorExpr):
    """Multiplication by x**power or y**power (principal branch)."""

    axis: str = "x"
    power: complex = 1

    def __post_init__(self):
        if self.axis not in ("x", "y"):
            raise ValueError("axis must be 'x' or 'y'")


@dataclass(frozen=True, eq=False)
class Delta(OperatorExpr):
    slot: str


@dataclass(frozen=True, eq=False)
class Rho(OperatorExpr):
    slot: str


@dataclass(frozen=True, eq=False)
class Theta(OperatorExpr):
    slot: str


@dataclass(frozen=True, eq=False)
class EulerX(OperatorExpr):
    pass


@dataclass(frozen=True, eq=False)
class EulerY(OperatorExpr):
    pass


@dataclass(frozen=True, eq=False)
class Sum(OperatorExpr):
    terms: tuple


@dataclass(frozen=True, eq=False)
class Compose(OperatorExpr):
    outer: OperatorExpr
    inner: OperatorExpr


@dataclass(frozen=True, eq=False)
class Power(OperatorExpr):
    op: OperatorExpr
    r: int

    def __post_init__(self):
        if int(self.r) != self.r or self.r < 0:
            raise ValueError("Power exponent must be a non-negative integer")


IDENTITY = Scalar(1.0)


def d_dx() -> OperatorExpr:
    """d/dx as x^-1 theta."""
    return Coord("x", -1) * EulerX()


def d_dy() -> OperatorExpr:
    return Coord("y", -1) * EulerY()


def falling(op: OperatorExpr, r: int) -> OperatorExpr:
    """op (op - 1) ... (op - r + 1); for op = theta this is x^r d^r/dx^r."""
    out: OperatorExpr = IDENTITY
    for j in range(r):
        out = out * (op - j)
    return out


def referenced_slots(expr: OperatorExpr) -> set[str]:
    if isinstance(expr, (Delta, Rho, Theta)):
        return {expr.slot}
    if isinstance(expr, Sum):
        return set().union(*(referenced_slots(t) for t in expr.terms)) if expr.terms else set()
    if isinstance(expr, Compose):
        return referenced_slots(expr.outer) | referenced_slots(expr.inner)
    if isinstance(expr, Power):
        return referenced_slots(expr.op)
    return set()


def _shift(point: Point, slot: str, delta: int) -> Point:
    out = dict(point)
    out[slot] = complex(point[slot]) + delta
    return out


def _times_exponent(w: Optional[WeightFn], axis: str) -> WeightFn:
    if axis == "x":
        if w is None:
            return lambda ex, ey: ex
        return lambda ex, ey: w(ex, ey) * ex
    if w is None:
        return lambda ex, ey: ey
    return lambda ex, ey: w(ex, ey) * ey


def _shift_exponent(w: Optional[WeightFn], axis: str, power: complex) -> Optional[WeightFn]:
    if w is None:
        return None
    if axis == "x":
        return lambda ex, ey: w(ex + power, ey)
    return lambda ex, ey: w(ex, ey + power)


def _euler_fd(g: Leaf, point: Point, axis: str) -> complex:
    c = complex(point[axis])
    if c == 0:
        return 0j

    def G(scale: float) -> complex:
        pt = dict(point)
        pt[axis] = c * scale
        return g(pt, None)

    def central(h: float) -> complex:
        return (G(math.exp(h)) - G(math.exp(-h))) / (2.0 * h)

    h = FD_LOG_STEP
    return (4.0 * central(h / 2) - central(h)) / 3.0


def _apply(expr: OperatorExpr, f: EvaluableFunction, g: Leaf, point: Point, w: Optional[WeightFn]) -> complex:
    if isinstance(expr, Scalar):
        v = expr.at(point)
        if v == 0:
            return 0j
        return v * g(point, w)
    if isinstance(expr, Coord):
        c = complex(point[expr.axis])
        p = complex(expr.power)
        if c == 0:
            if p.real > 0:
                return 0j
            if p == 0:
                return g(point, w)
            raise DomainError(f"{expr.axis}**{p} at {expr.axis} = 0")
        factor = c**p if p != int(p.real) else c ** int(p.real)
        return factor * g(point, _shift_exponent(w, expr.axis, p if p.imag else p.real))
    if isinstance(expr, (EulerX, EulerY)):
        axis = "x" if isinstance(expr, EulerX) else "y"
        if f.series is None:
            return _euler_fd(g, point, axis)
        return g(point, _times_exponent(w, axis))
    if isinstance(expr, Delta):
        return g(_shift(point, expr.slot, 1), w) - g(point, w)
    if isinstance(expr, Rho):
        return g(_shift(point, expr.slot, -1), w)
    if isinstance(expr, Theta):
        tv = complex(point[expr.slot])
        if tv == 0:
            return 0j
        return tv * (g(point, w) - g(_shift(point, expr.slot, -1), w))
    if isinstance(expr, Sum):
        return sum((_apply(t, f, g, point, w) for t in expr.terms), 0j)
    if isinstance(expr, Compose):
        inner = expr.inner

        def g_inner(pt: Point, w2: Optional[WeightFn]) -> complex:
            return _apply(inner, f, g, pt, w2)

        return _apply(expr.outer, f, g_inner, point, w)
    if isinstance(expr, Power):
        if expr.r == 0:
            return g(point, w)
        return _apply(Compose(expr.op, Power(expr.op, expr.r - 1)), f, g, point, w)
    raise TypeError(f"unknown operator node {type(expr).__name__}")


def apply(expr: OperatorExpr, f: EvaluableFunction, point: Point) -> complex:
    """Value of (expr f) at ``point`` (a dict holding the t-slots and x, y)."""
    missing = referenced_slots(expr) - set(f.slots)
    if missing:
        raise DomainError(f"operator references slots {sorted(missing)} the operand does not have")
    cache: dict = {}

    def leaf(pt: Point, w: Optional[WeightFn]) -> complex:
        try:
            if w is None:
                key = tuple(sorted((k, complex(v)) for k, v in pt.items()))
                if key not in cache:
                    cache[key] = complex(f.func(pt))
                return cache[key]
            return complex(f.series(pt, w))
        except (DivergenceError, PoleError, OverflowError) as exc:
            raise DomainError(f"operand not evaluable at {pt}: {exc}") from exc

    return _apply(as_operator(expr), f, leaf, point, None)


# -- operands built from the discrete Appell functions -------------------------


def appell_function(
    params: ParameterSet,
    d: DiscreteParams,
    cfg: SummationConfig | None = None,
    argument_map: str = "identity",
) -> EvaluableFunction:
    """Discrete F2 as an operand with t-slots ``d.slots``.

    ``argument_map``: "identity" gives F(x, y); "x_xy" gives F(x, x y); "xy_y"
    gives F(x y, y).  The series handle accounts for the exponent change.
    """

    def args(pt: Point) -> EvalPoint:
        x, y = complex(pt["x"]), complex(pt["y"])
        if argument_map == "x_xy":
            return EvalPoint(x, x * y)
        if argument_map == "xy_y":
            return EvalPoint(x * y, y)
        if argument_map != "identity":
            raise ValueError(f"unknown argument map {argument_map!r}")
        return EvalPoint(x, y)

    def disc(pt: Point) -> DiscreteParams:
        return d.with_slots(**{s: complex(pt[s]) for s in d.slots})

    def exps(w: WeightFn) -> WeightFn:
        if argument_map == "x_xy":
            return lambda m, n: w(m + n, n)
        if argument_map == "xy_y":
            return lambda m, n: w(m, m + n)
        return w

    def func(pt: Point) -> complex:
        return eval_discrete_f2(params, disc(pt), args(pt), cfg).value

    def series(pt: Point, w: WeightFn) -> complex:
        return eval_discrete_f2(params, disc(pt), args(pt), cfg, weight=exps(w)).value

    return EvaluableFunction(func, d.slots, series)


def make_point(d: DiscreteParams, p: EvalPoint) -> Point:
    pt: Point = dict(d.slot_values())
    pt.update(x=p.x, y=p.y)
    return pt


def discrete_coefficient(slot: str, k: int) -> Scalar:
    """Multiplication by (-1)^k (-t)_k evaluated at the current value of ``slot``."""
    return Scalar(lambda pt: discrete_factor(pt[slot], k, 1), label=f"(-1)^{k}(-{slot})_{k}")


DIFFERENCE_EQUATIONS = ("Eq1_15", "Eq1_16", "Eq6_V2_x", "Eq6_V2_y")


def difference_equation_operators(which: str, params: ParameterSet, d: DiscreteParams) -> tuple[OperatorExpr, OperatorExpr]:
    """The two sides (as operators) of one difference-differential equation."""
    a, b1, b2, c1, c2 = params.a, params.b1, params.b2, params.c1, params.c2
    if which in ("Eq1_15", "Eq1_16"):
        d1 = d.as_v1()
        if d1.variant is not Variant.V1:
            raise PreconditionError(f"{which} applies to the V1/V3 functions")
        k1, k2 = d1.k1, d1.k2
        if k1 < 1 or k2 < 1:
            raise PreconditionError(f"{which} needs k1, k2 >= 1 (the operators divide by both)")
        T1, T2 = Theta("t1"), Theta("t2")
        joint = T1 / k1 + T2 / k2 + a
        if which == "Eq1_15":
            lhs = T1 * (T1 / k1 + (c1 - 1))
            rhs = k1 * discrete_coefficient("t1", k1) * Coord("x") * Rho("t1") ** k1 * joint * (T1 / k1 + b1)
        else:
            lhs = T2 * (T2 / k2 + (c2 - 1))
            rhs = k2 * discrete_coefficient("t2", k2) * Coord("y") * Rho("t2") ** k2 * joint * (T2 / k2 + b2)
        return lhs, rhs
    if which in ("Eq6_V2_x", "Eq6_V2_y"):
        if d.variant is not Variant.V2:
            raise PreconditionError(f"{which} applies to the V2 function")
        k = d.k
        if k < 1:
            raise PreconditionError(f"{which} needs k >= 1")
        T = Theta("t")
        joint = T / k + a
        if which == "Eq6_V2_x":
            th = EulerX()
            lhs = th * (th + (c1 - 1))
            rhs = discrete_coefficient("t", k) * Coord("x") * Rho("t") ** k * joint * (th + b1)
        else:
            ph = EulerY()
            lhs = ph * (ph + (c2 - 1))
            rhs = discrete_coefficient("t", k) * Coord("y") * Rho("t") ** k * joint * (ph + b2)
        return lhs, rhs
    raise ValueError(f"unknown difference equation {which!r}")


def residual_difference_equation(
    which: str,
    params: ParameterSet,
    d: DiscreteParams,
    p: EvalPoint,
    cfg: SummationConfig | None = None,
    tolerance: float = 1e-8,
) -> IdentityCheckResult:
    """Apply both sides of a difference-differential equation to the function at (d, p)."""
    lhs_op, rhs_op = difference_equation_operators(which, params, d)
    f = appell_function(params, d, cfg)
    pt = make_point(d, p)
    lhs = apply(lhs_op, f, pt)
    rhs = apply(rhs_op, f, pt)
    value = f(pt)
    scale = max(abs(lhs), abs(rhs), abs(value))
    variant = Variant.V2 if d.variant is Variant.V2 else Variant.V1
    ident = IdentityId(Family.DIFFERENCE_EQ, variant, which)
    point = {"params": params.as_dict(), "discrete": d.as_dict(), **p.as_dict()}
    notes = ""
    if which.startswith("Eq6"):
        notes = "right side taken without a leading factor k (the equation balances only in that form for k > 1)"
    return IdentityCheckResult.from_sides(ident, point, lhs, rhs, tolerance, notes=notes, scale=scale)
