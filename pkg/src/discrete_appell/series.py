"""Double power series summed by anti-diagonals, and the Kampé de Fériet evaluator.

Terms are generated from ratios T(m+1,n)/T(m,n) and T(m,n+1)/T(m,n), one
anti-diagonal m+n = d at a time.  Exact zeros propagate, so a terminating
numerator makes a whole diagonal vanish and the sum stops exactly.
"""
from __future__ import annotations

import enum
import math
import os
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import ConfigError, DivergenceError, PoleError
from .gamma import POLE_TOL

RatioFn = Callable[[np.ndarray, np.ndarray], np.ndarray]
WeightFn = Callable[[np.ndarray, np.ndarray], np.ndarray]

MAX_DIAGONAL_ENV = "DISCRETE_APPELL_MAX_DIAGONAL"
_DIVERGENCE_START = 16


class SeriesStatus(str, enum.Enum):
    TERMINATED = "Terminated"
    CONVERGED = "Converged"
    MAX_TERMS = "MaxTermsReached"
    DIVERGENT = "DivergenceDetected"


@dataclass(frozen=True)
class SummationConfig:
    rel_tolerance: float = 1e-14
    max_diagonal: int = 512
    divergence_window: int = 8

    def __post_init__(self):
        if not (self.rel_tolerance > 0):
            raise ConfigError("rel_tolerance must be positive")
        if int(self.max_diagonal) < 1:
            raise ConfigError("max_diagonal must be >= 1")
        if int(self.divergence_window) < 1:
            raise ConfigError("divergence_window must be >= 1")

    @classmethod
    def from_env(cls, **overrides) -> "SummationConfig":
        """Default config, with the diagonal cap taken from the environment if set."""
        raw = os.environ.get(MAX_DIAGONAL_ENV)
        if raw is not None and "max_diagonal" not in overrides:
            try:
                overrides["max_diagonal"] = int(raw)
            except ValueError:
                raise ConfigError(f"{MAX_DIAGONAL_ENV} must be an integer, got {raw!r}")
        return cls(**overrides)


DEFAULT_CONFIG = SummationConfig()


@dataclass(frozen=True)
class SeriesValue:
    value: complex
    terms_used: int
    tail_estimate: float
    status: SeriesStatus
    diagonals: int = 0

    @property
    def ok(self) -> bool:
        return self.status in (SeriesStatus.TERMINATED, SeriesStatus.CONVERGED)

    def __complex__(self) -> complex:
        return complex(self.value)


def _as_array(r, size: int) -> np.ndarray:
    r = np.asarray(r, dtype=complex)
    if r.shape != (size,):
        r = np.broadcast_to(r, (size,))
    return r


def _step(prev: np.ndarray, ratio: np.ndarray, mult: complex) -> np.ndarray:
    """prev * ratio * mult with exact-zero propagation and pole detection."""
    out = np.zeros(prev.shape, dtype=complex)
    live = prev != 0
    if mult == 0 or not live.any():
        return out
    r = ratio[live]
    if not np.all(np.isfinite(r)):
        raise PoleError("term ratio is not finite: a lower parameter hits a pole")
    with np.errstate(over="ignore", invalid="ignore"):
        out[live] = prev[live] * r * mult
    return out


def sum_double_series(
    term_ratio_m: RatioFn,
    term_ratio_n: RatioFn,
    x: complex,
    y: complex,
    cfg: SummationConfig | None = None,
    weight: Optional[WeightFn] = None,
) -> SeriesValue:
    """Sum T(m,n) x^m y^n (optionally times weight(m,n)) with T(0,0) = 1.

    ``term_ratio_m(m, n)`` must return T(m+1,n)/T(m,n) and ``term_ratio_n``
    T(m,n+1)/T(m,n); both receive integer arrays and are evaluated only where
    the current term is non-zero.
    """
    cfg = cfg if cfg is not None else DEFAULT_CONFIG
    if not isinstance(cfg, SummationConfig):
        raise ConfigError("cfg must be a SummationConfig")
    x = complex(x)
    y = complex(y)
    tol = cfg.rel_tolerance
    window = int(cfg.divergence_window)

    prev = np.ones(1, dtype=complex)
    w0 = 1.0 if weight is None else complex(_as_array(weight(np.zeros(1, int), np.zeros(1, int)), 1)[0])
    acc = complex(w0)
    terms = 1
    mags = [1.0 * max(1.0, abs(w0))]
    quiet = 0

    for d in range(1, int(cfg.max_diagonal) + 1):
        m_prev = np.arange(d)
        n_prev = d - 1 - m_prev
        cur = np.empty(d + 1, dtype=complex)
        live = prev != 0
        if y != 0 and live.any():
            rn = np.zeros(d, dtype=complex)
            with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
                rn[live] = _as_array(term_ratio_n(m_prev[live], n_prev[live]), int(live.sum()))
        else:
            rn = np.zeros(d, dtype=complex)
        cur[:d] = _step(prev, rn, y)
        last = prev[d - 1 : d]
        if x != 0 and last[0] != 0:
            with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
                rm = _as_array(term_ratio_m(np.array([d - 1]), np.array([0])), 1)
        else:
            rm = np.zeros(1, dtype=complex)
        cur[d:] = _step(last, rm, x)

        if not np.all(np.isfinite(cur)):
            return SeriesValue(acc, terms, math.inf, SeriesStatus.DIVERGENT, d)

        nz = cur != 0
        if not nz.any():
            return SeriesValue(acc, terms, 0.0, SeriesStatus.TERMINATED, d)
        terms += int(nz.sum())

        m_cur = np.arange(d + 1)
        if weight is None:
            contrib = complex(cur.sum())
            mag = float(np.abs(cur).sum())
        else:
            w = _as_array(weight(m_cur, d - m_cur), d + 1)
            contrib = complex((w * cur).sum())
            mag = float((np.abs(cur) * np.maximum(1.0, np.abs(w))).sum())
        if not (math.isfinite(mag) and math.isfinite(contrib.real) and math.isfinite(contrib.imag)):
            return SeriesValue(acc, terms, math.inf, SeriesStatus.DIVERGENT, d)
        acc += contrib
        mags.append(mag)

        if d > _DIVERGENCE_START and len(mags) > window:
            recent = mags[-(window + 1):]
            if all(b > a for a, b in zip(recent, recent[1:])):
                return SeriesValue(acc, terms, math.inf, SeriesStatus.DIVERGENT, d)

        if mag <= tol * abs(acc):
            quiet += 1
        else:
            quiet = 0
        if quiet >= window:
            q = mag / mags[-2] if mags[-2] > 0 else 1.0
            tail = mag * q / (1.0 - q) if q < 1.0 else mag
            if tail <= tol * max(1.0, abs(acc)):
                return SeriesValue(acc, terms, tail, SeriesStatus.CONVERGED, d)
        prev = cur

    return SeriesValue(acc, terms, mags[-1], SeriesStatus.MAX_TERMS, int(cfg.max_diagonal))


def snap(z: complex, tol: float = POLE_TOL) -> complex:
    """Round ``z`` to an exact integer when it is within ``tol`` of one."""
    z = complex(z)
    r = round(z.real)
    if abs(z.imag) <= tol and abs(z.real - r) <= tol:
        return complex(r, 0.0)
    return z


def _row(values: Sequence[complex]) -> np.ndarray:
    return np.array([snap(v) for v in values], dtype=complex)


@dataclass(frozen=True)
class KdFSpec:
    """Parameter rows of a Kampé de Fériet double series.

    Upper rows: ``upper_joint`` (index m+n), ``upper_x`` (m), ``upper_y`` (n);
    lower rows likewise.
    """

    upper_joint: tuple = ()
    upper_x: tuple = ()
    upper_y: tuple = ()
    lower_joint: tuple = ()
    lower_x: tuple = ()
    lower_y: tuple = ()

    def __post_init__(self):
        for name in ("upper_joint", "upper_x", "upper_y", "lower_joint", "lower_x", "lower_y"):
            object.__setattr__(self, name, tuple(complex(v) for v in getattr(self, name)))

    @property
    def orders(self) -> tuple[tuple[int, int, int], tuple[int, int, int]]:
        return (
            (len(self.upper_joint), len(self.upper_x), len(self.upper_y)),
            (len(self.lower_joint), len(self.lower_x), len(self.lower_y)),
        )


def kdf_ratios(spec: KdFSpec) -> tuple[RatioFn, RatioFn]:
    A, B, C = _row(spec.upper_joint), _row(spec.upper_x), _row(spec.upper_y)
    D, E, F = _row(spec.lower_joint), _row(spec.lower_x), _row(spec.lower_y)

    def _prod(params: np.ndarray, idx: np.ndarray) -> np.ndarray:
        if params.size == 0:
            return np.ones(idx.shape, dtype=complex)
        return np.prod(params[:, None] + idx[None, :], axis=0)

    def ratio_m(m, n):
        s = m + n
        return _prod(A, s) * _prod(B, m) / (_prod(D, s) * _prod(E, m) * (m + 1))

    def ratio_n(m, n):
        s = m + n
        return _prod(A, s) * _prod(C, n) / (_prod(D, s) * _prod(F, n) * (n + 1))

    return ratio_m, ratio_n


def eval_kdf(
    spec: KdFSpec,
    x: complex,
    y: complex,
    cfg: SummationConfig | None = None,
    weight: Optional[WeightFn] = None,
) -> SeriesValue:
    """Evaluate the Kampé de Fériet series of ``spec`` at (x, y).

    Raises DivergenceError if the engine detects growth, PoleError when a lower
    parameter is hit before the series terminates.
    """
    rm, rn = kdf_ratios(spec)
    res = sum_double_series(rm, rn, x, y, cfg, weight)
    if res.status is SeriesStatus.DIVERGENT:
        raise DivergenceError(f"Kampé de Fériet series diverges at x={x}, y={y}")
    return res
