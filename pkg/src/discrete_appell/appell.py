"""Appell F2, its discrete analogues and the discrete Humbert functions.

All functions are double series sum_{m,n} T(m,n) x^m y^n.  The discrete
variants carry the falling factors t(t-1)...(t-mk+1) = (-1)^(mk) (-t)_(mk):

* V1: independent factors in (t1, k1) for m and (t2, k2) for n,
* V2: one factor in (t, k) of total index m+n,
* V3: V1 with k1 = k2 = k.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace
from typing import Optional, Sequence

import numpy as np

from .errors import DivergenceError, PreconditionError
from .gamma import is_nonnegative_integer, is_nonpositive_integer
from .results import Family, IdentityCheckResult, IdentityId, Variant, format_complex
from .series import (
    KdFSpec,
    SeriesStatus,
    SeriesValue,
    SummationConfig,
    WeightFn,
    eval_kdf,
    snap,
    sum_double_series,
)


@dataclass(frozen=True)
class ParameterSet:
    a: complex
    b1: complex
    b2: complex
    c1: complex
    c2: complex

    def __post_init__(self):
        for name in ("a", "b1", "b2", "c1", "c2"):
            object.__setattr__(self, name, complex(getattr(self, name)))

    def shift(self, **deltas) -> "ParameterSet":
        """Copy with parameters moved by the given amounts, e.g. ``shift(a=1, c1=-1)``."""
        return replace(self, **{k: getattr(self, k) + v for k, v in deltas.items()})

    def swapped(self) -> "ParameterSet":
        return ParameterSet(self.a, self.b2, self.b1, self.c2, self.c1)

    def as_dict(self) -> dict[str, str]:
        return {k: format_complex(getattr(self, k)) for k in ("a", "b1", "b2", "c1", "c2")}


def _nonneg_int(k, name: str) -> int:
    if int(k) != k or k < 0:
        raise ValueError(f"{name} must be a non-negative integer, got {k!r}")
    return int(k)


@dataclass(frozen=True)
class DiscreteParams:
    """Discrete data of one variant; only the fields of ``variant`` are meaningful."""

    variant: Variant
    t1: complex = 0j
    t2: complex = 0j
    t: complex = 0j
    k1: int = 0
    k2: int = 0
    k: int = 0

    def __post_init__(self):
        object.__setattr__(self, "variant", Variant(self.variant))
        for name in ("t1", "t2", "t"):
            object.__setattr__(self, name, complex(getattr(self, name)))
        for name in ("k1", "k2", "k"):
            object.__setattr__(self, name, _nonneg_int(getattr(self, name), name))

    @classmethod
    def v1(cls, t1, t2, k1: int, k2: int) -> "DiscreteParams":
        return cls(Variant.V1, t1=t1, t2=t2, k1=k1, k2=k2)

    @classmethod
    def v2(cls, t, k: int) -> "DiscreteParams":
        return cls(Variant.V2, t=t, k=k)

    @classmethod
    def v3(cls, t1, t2, k: int) -> "DiscreteParams":
        return cls(Variant.V3, t1=t1, t2=t2, k=k)

    @property
    def slots(self) -> tuple[str, ...]:
        return ("t",) if self.variant is Variant.V2 else ("t1", "t2")

    def slot_values(self) -> dict[str, complex]:
        return {s: getattr(self, s) for s in self.slots}

    def with_slots(self, **values) -> "DiscreteParams":
        bad = set(values) - set(self.slots)
        if bad:
            raise KeyError(f"unknown discrete slots {sorted(bad)} for {self.variant.value}")
        return replace(self, **values)

    def step(self, slot: str) -> int:
        """Step index k attached to a t-slot."""
        if self.variant is Variant.V2:
            return self.k
        if self.variant is Variant.V3:
            return self.k
        return self.k1 if slot == "t1" else self.k2

    def as_v1(self) -> "DiscreteParams":
        if self.variant is Variant.V3:
            return DiscreteParams.v1(self.t1, self.t2, self.k, self.k)
        return self

    def swapped(self) -> "DiscreteParams":
        if self.variant is Variant.V2:
            return self
        return replace(self, t1=self.t2, t2=self.t1, k1=self.k2, k2=self.k1)

    def as_dict(self) -> dict:
        out: dict = {"variant": self.variant.value}
        if self.variant is Variant.V2:
            out.update(t=format_complex(self.t), k=self.k)
        elif self.variant is Variant.V3:
            out.update(t1=format_complex(self.t1), t2=format_complex(self.t2), k=self.k)
        else:
            out.update(t1=format_complex(self.t1), t2=format_complex(self.t2), k1=self.k1, k2=self.k2)
        return out


@dataclass(frozen=True)
class EvalPoint:
    x: complex
    y: complex

    def __post_init__(self):
        object.__setattr__(self, "x", complex(self.x))
        object.__setattr__(self, "y", complex(self.y))

    def as_dict(self) -> dict[str, str]:
        return {"x": format_complex(self.x), "y": format_complex(self.y)}


def _falling_ratio(t: complex, k: int, s: np.ndarray) -> np.ndarray:
    """D(t,k,s+1)/D(t,k,s) = prod_{j<k} (t - s k - j) for D the falling factor."""
    out = np.ones(np.shape(s), dtype=complex)
    for j in range(k):
        out = out * (t - s * k - j)
    return out


def _ratios(a, b1, b2, c1, c2, disc: Optional[DiscreteParams]):
    """Term ratios of the F2-type series; ``b1``/``b2`` of None drops that factor."""
    a, c1, c2 = snap(a), snap(c1), snap(c2)
    b1 = None if b1 is None else snap(b1)
    b2 = None if b2 is None else snap(b2)
    if disc is not None:
        disc = disc.as_v1()
    variant = None if disc is None else disc.variant

    def ratio_m(m, n):
        r = (a + m + n) / ((c1 + m) * (m + 1))
        if b1 is not None:
            r = r * (b1 + m)
        if variant is Variant.V1 and disc.k1:
            r = r * _falling_ratio(snap(disc.t1), disc.k1, m)
        elif variant is Variant.V2 and disc.k:
            r = r * _falling_ratio(snap(disc.t), disc.k, m + n)
        return r

    def ratio_n(m, n):
        r = (a + m + n) / ((c2 + n) * (n + 1))
        if b2 is not None:
            r = r * (b2 + n)
        if variant is Variant.V1 and disc.k2:
            r = r * _falling_ratio(snap(disc.t2), disc.k2, n)
        elif variant is Variant.V2 and disc.k:
            r = r * _falling_ratio(snap(disc.t), disc.k, m + n)
        return r

    return ratio_m, ratio_n


def _terminating_dirs(a, b1, b2, disc: Optional[DiscreteParams]) -> tuple[bool, bool]:
    """Whether the series is a finite sum in the m and n directions."""
    if is_nonpositive_integer(a):
        return True, True
    tm = b1 is not None and is_nonpositive_integer(b1)
    tn = b2 is not None and is_nonpositive_integer(b2)
    if disc is not None:
        disc = disc.as_v1()
        if disc.variant is Variant.V2:
            if disc.k >= 1 and is_nonnegative_integer(disc.t):
                return True, True
        else:
            tm = tm or (disc.k1 >= 1 and is_nonnegative_integer(disc.t1))
            tn = tn or (disc.k2 >= 1 and is_nonnegative_integer(disc.t2))
    return tm, tn


def _formal(tm: bool, tn: bool, disc: Optional[DiscreteParams], p: EvalPoint) -> bool:
    """True when a non-terminating direction carries k >= 1 and a non-zero argument.

    The falling factor then grows like (mk)! against m!, so the series has zero
    radius of convergence: it is formal and no value is returned.
    """
    if disc is None:
        return False
    disc = disc.as_v1()
    if disc.variant is Variant.V2:
        return disc.k >= 1 and ((not tm and p.x != 0) or (not tn and p.y != 0))
    return (disc.k1 >= 1 and not tm and p.x != 0) or (disc.k2 >= 1 and not tn and p.y != 0)


def is_terminating(params: ParameterSet, disc: Optional[DiscreteParams] = None) -> bool:
    tm, tn = _terminating_dirs(params.a, params.b1, params.b2, disc)
    return tm and tn


def _run(rm, rn, p: EvalPoint, cfg, weight, terminating: bool, what: str, formal: bool = False) -> SeriesValue:
    if formal:
        raise DivergenceError(f"{what}: non-terminating series with k >= 1 has zero radius of convergence")
    if not terminating and abs(p.x) + abs(p.y) >= 1:
        raise DivergenceError(f"{what}: |x|+|y| >= 1 requires a terminating series")
    res = sum_double_series(rm, rn, p.x, p.y, cfg, weight)
    if res.status is SeriesStatus.DIVERGENT:
        raise DivergenceError(f"{what} diverges at x={p.x}, y={p.y}")
    return res


def eval_f2(
    params: ParameterSet,
    p: EvalPoint,
    cfg: SummationConfig | None = None,
    weight: Optional[WeightFn] = None,
) -> SeriesValue:
    """Classical Appell F2(a, b1, b2; c1, c2; x, y)."""
    rm, rn = _ratios(params.a, params.b1, params.b2, params.c1, params.c2, None)
    return _run(rm, rn, p, cfg, weight, is_terminating(params), "F2")


def eval_discrete_f2(
    params: ParameterSet,
    d: DiscreteParams,
    p: EvalPoint,
    cfg: SummationConfig | None = None,
    weight: Optional[WeightFn] = None,
) -> SeriesValue:
    """Discrete analogue of F2 selected by ``d.variant`` (V3 is V1 with k1 = k2 = k)."""
    d1 = d.as_v1()
    rm, rn = _ratios(params.a, params.b1, params.b2, params.c1, params.c2, d1)
    tm, tn = _terminating_dirs(params.a, params.b1, params.b2, d1)
    return _run(rm, rn, p, cfg, weight, tm and tn, f"F2 discrete {d.variant.value}", _formal(tm, tn, d1, p))


class HumbertKind(str, enum.Enum):
    PSI1 = "Psi1"
    PSI2 = "Psi2"


def eval_humbert(
    kind: HumbertKind,
    variant: Variant,
    params: ParameterSet,
    d: DiscreteParams | None,
    p: EvalPoint,
    cfg: SummationConfig | None = None,
) -> SeriesValue:
    """Discrete Humbert psi1 (uses a, b1, c1, c2) or psi2 (a, c1, c2).

    ``d=None`` gives the classical Humbert function.  The unused ``b``
    fields of ``params`` are ignored.
    """
    kind = HumbertKind(kind)
    variant = Variant(variant)
    if d is not None and d.as_v1().variant is not (Variant.V2 if variant is Variant.V2 else Variant.V1):
        raise ValueError(f"discrete params of variant {d.variant.value} do not match {variant.value}")
    b1 = params.b1 if kind is HumbertKind.PSI1 else None
    rm, rn = _ratios(params.a, b1, None, params.c1, params.c2, d)
    tm, tn = _terminating_dirs(params.a, b1, None, d)
    if _formal(tm, tn, d, p):
        raise DivergenceError(f"Humbert {kind.value}: non-terminating series with k >= 1 is formal")
    res = sum_double_series(rm, rn, p.x, p.y, cfg)
    if res.status is SeriesStatus.DIVERGENT:
        raise DivergenceError(f"Humbert {kind.value} diverges at x={p.x}, y={p.y}")
    return res


# -- Kampé de Fériet forms of the special cases ------------------------------


def kdf_reduction(params: ParameterSet, d: DiscreteParams, p: EvalPoint) -> tuple[KdFSpec, complex, complex]:
    """Kampé de Fériet spec and arguments equal to the discrete function for k in {0, 1}."""
    a, b1, b2, c1, c2 = params.a, params.b1, params.b2, params.c1, params.c2
    d1 = d.as_v1()
    if d1.variant is Variant.V2:
        if d1.k == 0:
            return KdFSpec((a,), (b1,), (b2,), (), (c1,), (c2,)), p.x, p.y
        if d1.k == 1:
            return KdFSpec((a, -d1.t), (b1,), (b2,), (), (c1,), (c2,)), -p.x, -p.y
        raise PreconditionError("Kampé de Fériet reduction of V2 needs k in {0, 1}")
    if d1.k1 not in (0, 1) or d1.k2 not in (0, 1):
        raise PreconditionError("Kampé de Fériet reduction of V1 needs k1, k2 in {0, 1}")
    ux = (b1,) if d1.k1 == 0 else (b1, -d1.t1)
    uy = (b2,) if d1.k2 == 0 else (b2, -d1.t2)
    x = p.x if d1.k1 == 0 else -p.x
    y = p.y if d1.k2 == 0 else -p.y
    return KdFSpec((a,), ux, uy, (), (c1,), (c2,)), x, y


# -- Humbert limits ----------------------------------------------------------


def _neville_at_zero(xs: Sequence[float], ys: Sequence[complex]) -> complex:
    """Value at 0 of the interpolating polynomial through (xs, ys)."""
    p = [complex(v) for v in ys]
    n = len(xs)
    for level in range(1, n):
        for i in range(n - level):
            j = i + level
            p[i] = (xs[j] * p[i] - xs[i] * p[i + 1]) / (xs[j] - xs[i])
    return p[0]


def humbert_limit_point(kind: HumbertKind, params: ParameterSet, p: EvalPoint, eps: float):
    """Parameters and argument of F2 whose eps -> 0 limit is the Humbert function."""
    inv = 1.0 / eps
    if HumbertKind(kind) is HumbertKind.PSI1:
        return replace(params, b2=complex(inv)), EvalPoint(p.x, eps * p.y)
    return replace(params, b1=complex(inv), b2=complex(inv)), EvalPoint(eps * p.x, eps * p.y)


def check_humbert_limit(
    kind: HumbertKind,
    variant: Variant,
    params: ParameterSet,
    d: DiscreteParams | None,
    p: EvalPoint,
    eps_sequence: Sequence[float] = (1e-2, 1e-3, 1e-4),
    cfg: SummationConfig | None = None,
) -> IdentityCheckResult:
    """Extrapolate F2-variant values at b -> 1/eps to eps = 0 and compare with psi.

    Passes when the residual is at most 10 * min(eps) * max(1, |psi|).
    With ``d=None`` the classical F2 -> psi limit is checked.
    """
    kind = HumbertKind(kind)
    variant = Variant(variant)
    eps = [float(e) for e in eps_sequence]
    if len(eps) < 1 or any(e <= 0 for e in eps) or any(b >= a for a, b in zip(eps, eps[1:])):
        raise ValueError("eps_sequence must be positive and strictly decreasing")
    vals = []
    for e in eps:
        prm, pt = humbert_limit_point(kind, params, p, e)
        if d is None:
            vals.append(eval_f2(prm, pt, cfg).value)
        else:
            vals.append(eval_discrete_f2(prm, d, pt, cfg).value)
    limit = _neville_at_zero(eps, vals)
    target = eval_humbert(kind, variant, params, d, p, cfg).value
    scale = max(1.0, abs(target))
    raw = ", ".join(f"eps={e:g}: {abs(v - target) / scale:.2e}" for e, v in zip(eps, vals))
    notes = f"raw relative residuals {raw}"
    if variant is Variant.V2:
        notes += "; compared against the V2 Humbert functions (psi^(2))"
    ident = IdentityId(Family.HUMBERT_LIMIT, variant, kind.value + ("" if d is not None else ":classical"))
    point = {"params": params.as_dict(), "discrete": None if d is None else d.as_dict(), **p.as_dict()}
    return IdentityCheckResult.from_sides(
        ident, point, limit, target, tolerance=10.0 * min(eps), notes=notes, scale=scale
    )
