"""Euler- and Laplace-type integral representations checked by Gauss quadrature.

Every representation is an integral of a Kampé de Fériet series against a
beta-type kernel u^(b-1) (1-u)^(c-b-1) on [0, 1] or a gamma-type kernel
e^(-u) u^(w-1) on [0, inf).  The real parts of the kernel exponents go into the
weight of a Gauss-Jacobi or generalized Gauss-Laguerre rule; imaginary parts
are folded into the integrand.  For terminating inner series the integrand is a
polynomial, so the rules are exact up to rounding.  A complex kernel exponent
leaves a factor u^(i*beta) that is not smooth at u = 0, and convergence then
drops to roughly 1/order.
"""
from __future__ import annotations

import cmath
import enum
import functools
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.special import betaln, gammaln, roots_genlaguerre, roots_jacobi, roots_legendre

from .appell import DiscreteParams, EvalPoint, ParameterSet, eval_discrete_f2
from .errors import ConfigError, ConstraintError
from .gamma import log_gamma
from .results import Family, IdentityCheckResult, IdentityId, Variant
from .series import KdFSpec, SummationConfig, eval_kdf

DEFAULT_ORDERS = (32, 48, 64)
# beyond this the Laguerre weights of the largest nodes underflow to zero
MAX_ORDER = 192
REP_TOLERANCE = 1e-6
# residuals below this are rounding, not quadrature error
NOISE_FLOOR = 1e-13


class RuleKind(str, enum.Enum):
    GAUSS_LEGENDRE_01 = "GaussLegendre01"
    GAUSS_JACOBI_01 = "GaussJacobi01"
    GAUSS_LAGUERRE = "GaussLaguerre"


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """Gauss rule: sum(weights * f(nodes)) approximates the weighted integral.

    GaussJacobi01 has weight u^p (1-u)^q on (0, 1); GaussLaguerre has weight
    u^alpha e^(-u) on (0, inf).  Legendre is Jacobi with p = q = 0.
    """

    kind: RuleKind
    nodes: np.ndarray
    weights: np.ndarray
    p: float = 0.0
    q: float = 0.0

    @property
    def order(self) -> int:
        return len(self.nodes)

    def integrate(self, values: np.ndarray) -> complex:
        return complex(np.sum(self.weights * np.asarray(values)))

    def moment_errors(self) -> np.ndarray:
        """Relative errors of the monomial moments of degree 0 .. 2*order-1."""
        j = np.arange(2 * self.order)
        if self.kind is RuleKind.GAUSS_LAGUERRE:
            exact_log = gammaln(j + self.p + 1.0)
        else:
            exact_log = betaln(j + self.p + 1.0, self.q + 1.0)
        logs = np.log(self.weights)[None, :] + j[:, None] * np.log(self.nodes)[None, :] - exact_log[:, None]
        return np.abs(np.exp(logs).sum(axis=1) - 1.0)

    def validate(self) -> "QuadratureRule":
        """Check positivity, support and moment exactness; return self."""
        if not np.all(self.weights > 0):
            raise ConfigError(f"{self.kind.value} rule has non-positive weights")
        if self.kind is RuleKind.GAUSS_LAGUERRE:
            ok_support = np.all(self.nodes > 0)
        else:
            ok_support = np.all((self.nodes > 0) & (self.nodes < 1))
        if not ok_support:
            raise ConfigError(f"{self.kind.value} nodes leave the integration interval")
        if self.kind is RuleKind.GAUSS_LEGENDRE_01:
            j = np.arange(2 * self.order)
            got = np.array([np.sum(self.weights * self.nodes**i) for i in j])
            worst = float(np.max(np.abs(got - 1.0 / (j + 1))))
            limit = 1e-13
        else:
            worst = float(np.max(self.moment_errors()))
            limit = 1e-11
        if worst > limit:
            raise ConfigError(f"{self.kind.value} rule of order {self.order} misses moments by {worst:.2e}")
        return self


def _check_order(order: int) -> int:
    if int(order) != order or not 1 <= order <= MAX_ORDER:
        raise ConfigError(f"rule order must be an integer in [1, {MAX_ORDER}], got {order!r}")
    return int(order)


@functools.lru_cache(maxsize=64)
def gauss_legendre01(order: int) -> QuadratureRule:
    x, w = roots_legendre(_check_order(order))
    return QuadratureRule(RuleKind.GAUSS_LEGENDRE_01, (1 + x) / 2, w / 2).validate()


@functools.lru_cache(maxsize=256)
def gauss_jacobi01(order: int, p: float, q: float) -> QuadratureRule:
    """Weight u^p (1-u)^q on (0, 1); needs p, q > -1."""
    if not (p > -1 and q > -1):
        raise ConstraintError(f"Jacobi exponents must exceed -1, got p={p}, q={q}")
    x, w = roots_jacobi(_check_order(order), q, p)
    return QuadratureRule(RuleKind.GAUSS_JACOBI_01, (1 + x) / 2, w / 2.0 ** (p + q + 1), p, q).validate()


@functools.lru_cache(maxsize=256)
def gauss_laguerre(order: int, alpha: float = 0.0) -> QuadratureRule:
    """Weight u^alpha e^(-u) on (0, inf); needs alpha > -1."""
    if not alpha > -1:
        raise ConstraintError(f"Laguerre exponent must exceed -1, got {alpha}")
    x, w = roots_genlaguerre(_check_order(order), alpha)
    return QuadratureRule(RuleKind.GAUSS_LAGUERRE, x, w, alpha).validate()


def _phase(nodes: np.ndarray, imag: float) -> np.ndarray:
    """nodes^(i*imag) for positive nodes."""
    if imag == 0:
        return np.ones(nodes.shape, dtype=complex)
    return np.exp(1j * imag * np.log(nodes))


def _beta_kernel(order: int, b: complex, c: complex) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and complex weights of u^(b-1) (1-u)^(c-b-1) du / B(b, c-b) on (0, 1)."""
    b, c = complex(b), complex(c)
    rule = gauss_jacobi01(order, b.real - 1.0, (c - b).real - 1.0)
    u = rule.nodes
    w = rule.weights * _phase(u, b.imag) * _phase(1 - u, (c - b).imag)
    log_norm = log_gamma(c) - log_gamma(b) - log_gamma(c - b)
    return u, w * cmath.exp(log_norm)


def _gamma_kernel(order: int, s: complex) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and complex weights of e^(-u) u^(s-1) du / Gamma(s) on (0, inf)."""
    s = complex(s)
    rule = gauss_laguerre(order, s.real - 1.0)
    u = rule.nodes
    return u, rule.weights * _phase(u, s.imag) * cmath.exp(-log_gamma(s))


class IntegralRepId(str, enum.Enum):
    V1_EULER = "V1_Euler"
    V1_LAPLACE_A = "V1_LaplaceA"
    V1_LAPLACE_B1 = "V1_LaplaceB1"
    V1_LAPLACE_B2 = "V1_LaplaceB2"
    V1_LAPLACE_T1 = "V1_LaplaceT1"
    V1_LAPLACE_T2 = "V1_LaplaceT2"
    V2_EULER = "V2_Euler"
    V2_LAPLACE_A = "V2_LaplaceA"
    V2_LAPLACE_B1 = "V2_LaplaceB1"
    V2_LAPLACE_B2 = "V2_LaplaceB2"
    V2_LAPLACE_T = "V2_LaplaceT"

    @property
    def variant(self) -> Variant:
        return Variant.V2 if self.value.startswith("V2") else Variant.V1


def _split(t: complex, k: int) -> tuple[complex, ...]:
    """(-t)/k, (-t+1)/k, ..., (-t+k-1)/k: the Pochhammer split of (-t)_(mk)."""
    return tuple((-complex(t) + i) / k for i in range(k))


def _scale(k: int) -> complex:
    return complex((-k) ** k)


def constraint_violations(rep: IntegralRepId, params: ParameterSet, d: DiscreteParams) -> list[str]:
    """Human-readable list of failed positivity conditions (empty when all hold)."""
    rep = IntegralRepId(rep)
    a, b1, b2, c1, c2 = params.a, params.b1, params.b2, params.c1, params.c2
    need: list[tuple[str, complex]] = []
    if rep in (IntegralRepId.V1_EULER, IntegralRepId.V2_EULER):
        need = [("b1", b1), ("c1-b1", c1 - b1), ("b2", b2), ("c2-b2", c2 - b2)]
    elif rep in (IntegralRepId.V1_LAPLACE_A, IntegralRepId.V2_LAPLACE_A):
        need = [("a", a)]
    elif rep in (IntegralRepId.V1_LAPLACE_B1, IntegralRepId.V2_LAPLACE_B1):
        need = [("b1", b1)]
    elif rep in (IntegralRepId.V1_LAPLACE_B2, IntegralRepId.V2_LAPLACE_B2):
        need = [("b2", b2)]
    elif rep is IntegralRepId.V1_LAPLACE_T1:
        need = [("-t1", -d.t1)]
    elif rep is IntegralRepId.V1_LAPLACE_T2:
        need = [("-t2", -d.t2)]
    elif rep is IntegralRepId.V2_LAPLACE_T:
        need = [("-t", -d.t)]
    return [f"Re({name}) = {v.real:g} is not > 0" for name, v in need if not v.real > 0]


def _integrand_1d(rep: IntegralRepId, params: ParameterSet, d: DiscreteParams, p: EvalPoint):
    """Inner KdF as a function of one integration variable, plus the kernel exponent."""
    a, b1, b2, c1, c2 = params.a, params.b1, params.b2, params.c1, params.c2
    x, y = p.x, p.y
    if rep.variant is Variant.V1:
        k1, k2 = d.k1, d.k2
        t1s, t2s = _split(d.t1, k1), _split(d.t2, k2)
        s1, s2 = _scale(k1), _scale(k2)
        if rep is IntegralRepId.V1_LAPLACE_A:
            spec = KdFSpec((), (b1, *t1s), (b2, *t2s), (), (c1,), (c2,))
            return a, lambda u: (spec, s1 * u * x, s2 * u * y)
        if rep is IntegralRepId.V1_LAPLACE_B1:
            spec = KdFSpec((a,), t1s, (b2, *t2s), (), (c1,), (c2,))
            return b1, lambda u: (spec, s1 * u * x, s2 * y)
        if rep is IntegralRepId.V1_LAPLACE_B2:
            spec = KdFSpec((a,), (b1, *t1s), t2s, (), (c1,), (c2,))
            return b2, lambda u: (spec, s1 * x, s2 * u * y)
        if rep is IntegralRepId.V1_LAPLACE_T1:
            spec = KdFSpec((a,), (b1,), (b2, *t2s), (), (c1,), (c2,))
            return -d.t1, lambda u: (spec, (-u) ** k1 * x, s2 * y)
        if rep is IntegralRepId.V1_LAPLACE_T2:
            spec = KdFSpec((a,), (b1, *t1s), (b2,), (), (c1,), (c2,))
            return -d.t2, lambda u: (spec, s1 * x, (-u) ** k2 * y)
    else:
        k = d.k
        ts, s = _split(d.t, k), _scale(k)
        if rep is IntegralRepId.V2_LAPLACE_A:
            spec = KdFSpec(ts, (b1,), (b2,), (), (c1,), (c2,))
            return a, lambda u: (spec, s * u * x, s * u * y)
        if rep is IntegralRepId.V2_LAPLACE_B1:
            spec = KdFSpec((a, *ts), (), (b2,), (), (c1,), (c2,))
            return b1, lambda u: (spec, s * u * x, s * y)
        if rep is IntegralRepId.V2_LAPLACE_B2:
            spec = KdFSpec((a, *ts), (b1,), (), (), (c1,), (c2,))
            return b2, lambda u: (spec, s * x, s * u * y)
        if rep is IntegralRepId.V2_LAPLACE_T:
            spec = KdFSpec((a,), (b1,), (b2,), (), (c1,), (c2,))
            return -d.t, lambda u: (spec, (-u) ** k * x, (-u) ** k * y)
    raise ValueError(f"{rep.value} is not a single-integral representation")


def _euler_spec(rep: IntegralRepId, params: ParameterSet, d: DiscreteParams, p: EvalPoint):
    if rep is IntegralRepId.V1_EULER:
        spec = KdFSpec((params.a,), _split(d.t1, d.k1), _split(d.t2, d.k2))
        return spec, _scale(d.k1) * p.x, _scale(d.k2) * p.y
    spec = KdFSpec((params.a, *_split(d.t, d.k)))
    return spec, _scale(d.k) * p.x, _scale(d.k) * p.y


def _inner_config(cfg: SummationConfig | None) -> SummationConfig:
    base = cfg if cfg is not None else SummationConfig()
    tol = min(base.rel_tolerance, 1e-3 * REP_TOLERANCE)
    return SummationConfig(tol, base.max_diagonal, base.divergence_window)


def _prepare(rep, params: ParameterSet, d: DiscreteParams) -> tuple[IntegralRepId, DiscreteParams]:
    rep = IntegralRepId(rep)
    d = d.as_v1()
    want = Variant.V2 if rep.variant is Variant.V2 else Variant.V1
    if d.variant is not want:
        raise ConstraintError(f"{rep.value} needs discrete parameters of variant {rep.variant.value}")
    bad = constraint_violations(rep, params, d)
    if bad:
        raise ConstraintError(f"{rep.value}: " + "; ".join(bad))
    return rep, d


def eval_integral_rep(
    rep: IntegralRepId | str,
    params: ParameterSet,
    d: DiscreteParams,
    p: EvalPoint,
    rule_order: int = 64,
    cfg: SummationConfig | None = None,
) -> complex:
    """Quadrature value of one integral representation of the discrete F2.

    Node contributions are accumulated in node order, so results are
    reproducible bit for bit.
    """
    rep, d = _prepare(rep, params, d)
    order = _check_order(rule_order)
    icfg = _inner_config(cfg)
    if rep in (IntegralRepId.V1_EULER, IntegralRepId.V2_EULER):
        spec, X, Y = _euler_spec(rep, params, d, p)
        u, wu = _beta_kernel(order, params.b1, params.c1)
        v, wv = _beta_kernel(order, params.b2, params.c2)
        total = 0j
        for i in range(order):
            row = np.array([eval_kdf(spec, u[i] * X, v[j] * Y, icfg).value for j in range(order)])
            total += wu[i] * complex(np.sum(wv * row))
        return total
    s, inner = _integrand_1d(rep, params, d, p)
    u, w = _gamma_kernel(order, s)
    vals = np.empty(order, dtype=complex)
    for i in range(order):
        spec, X, Y = inner(u[i])
        vals[i] = eval_kdf(spec, X, Y, icfg).value
    return complex(np.sum(w * vals))


def verify_integral_rep(
    rep: IntegralRepId | str,
    params: ParameterSet,
    d: DiscreteParams,
    p: EvalPoint,
    orders: Sequence[int] = DEFAULT_ORDERS,
    cfg: SummationConfig | None = None,
    tolerance: float = REP_TOLERANCE,
) -> IdentityCheckResult:
    """Compare quadrature at increasing orders with the series value.

    Passes when the last-order residual is within ``tolerance`` (relative),
    the last two orders agree within ``tolerance`` and the residual at the
    highest order is at most twice that at the lowest (above a rounding floor).
    """
    orders = [_check_order(o) for o in orders]
    if len(orders) < 2:
        raise ConfigError("at least two rule orders are needed to judge stabilization")
    if any(b <= a for a, b in zip(orders, orders[1:])):
        raise ConfigError("rule orders must be strictly increasing")
    rep, d1 = _prepare(rep, params, d)
    series = eval_discrete_f2(params, d1, p, cfg).value
    values = [eval_integral_rep(rep, params, d1, p, o, cfg) for o in orders]
    scale = max(abs(series), 1e-300)
    residuals = [abs(v - series) / scale for v in values]
    stable = abs(values[-1] - values[-2]) <= tolerance * max(abs(values[-1]), 1e-300)
    monotone = residuals[-1] <= max(2.0 * residuals[0], NOISE_FLOOR)
    notes = "residuals by order: " + ", ".join(f"{o}: {r:.2e}" for o, r in zip(orders, residuals))
    if not stable:
        notes += "; not stabilized between the last two orders"
    if not monotone:
        notes += "; residual grew with order"
    ident = IdentityId(Family.INTEGRAL_REP, rep.variant, rep.value)
    point = {"params": params.as_dict(), "discrete": d.as_dict(), **p.as_dict(), "orders": list(orders)}
    res = IdentityCheckResult.from_sides(ident, point, values[-1], series, tolerance, notes=notes, scale=scale)
    res.passed = bool(res.passed and stable and monotone)
    return res


def smoke_point(rep: IntegralRepId | str) -> tuple[ParameterSet, DiscreteParams, EvalPoint]:
    """A terminating instance satisfying the representation's constraints.

    Gamma-kernel forms in t need Re(-t) > 0, so there the series is made
    finite through a = -2 instead of through a non-negative integer t.
    """
    rep = IntegralRepId(rep)
    euler = ParameterSet(1.1, 1.2, 1.3, 2.5, 2.6)
    p = EvalPoint(0.2, 0.15)
    if rep is IntegralRepId.V1_LAPLACE_T1:
        return ParameterSet(-2, 1.2, 1.3, 2.5, 2.6), DiscreteParams.v1(-2.5, 2, 1, 1), p
    if rep is IntegralRepId.V1_LAPLACE_T2:
        return ParameterSet(-2, 1.2, 1.3, 2.5, 2.6), DiscreteParams.v1(2, -2.5, 1, 1), p
    if rep is IntegralRepId.V2_LAPLACE_T:
        return ParameterSet(-2, 1.2, 1.3, 2.5, 2.6), DiscreteParams.v2(-1.5, 1), p
    if rep.variant is Variant.V2:
        return euler, DiscreteParams.v2(3, 1), p
    return euler, DiscreteParams.v1(2, 2, 1, 1), p
