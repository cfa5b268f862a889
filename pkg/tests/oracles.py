"""Independent reference values: plain double sums in mpmath at 30 digits.

Nothing here imports the package under test.  Each term is assembled from
tabulated rising/falling factorials (mpmath's own ``rf``/``ff``), never from
term ratios, so an error in the package's ratio recursion cannot leak in.
"""
from __future__ import annotations

import mpmath as mp

mp.mp.dps = 30


def rf(a, n: int):
    """Rising factorial (a)_n."""
    return mp.rf(mp.mpc(a), n)


def falling(t, n: int):
    """t (t-1) ... (t-n+1)."""
    return mp.ff(mp.mpc(t), n)


def _table(fn, base, n):
    return [fn(base, i) for i in range(n)]


def _disc_tables(nmax, t1, t2, k1, k2, t, k):
    if t is not None:
        joint = [falling(t, k * s) for s in range(nmax)]
        return joint, [mp.mpc(1)] * nmax, [mp.mpc(1)] * nmax
    return [mp.mpc(1)] * nmax, [falling(t1, k1 * m) for m in range(nmax)], [falling(t2, k2 * n) for n in range(nmax)]


def f2_discrete(a, b1, b2, c1, c2, x, y, *, t1=0, t2=0, k1=0, k2=0, t=None, k=None, nmax=120):
    """Direct double sum of a discrete F2 variant over m + n < nmax.

    With ``t``/``k`` given the factor is falling(t, k(m+n)) (variant two);
    otherwise falling(t1, k1 m) falling(t2, k2 n).  k = 0 gives classical F2.
    """
    x, y = mp.mpc(x), mp.mpc(y)
    A = _table(rf, a, nmax)
    B1, B2 = _table(rf, b1, nmax), _table(rf, b2, nmax)
    C1, C2 = _table(rf, c1, nmax), _table(rf, c2, nmax)
    J, DX, DY = _disc_tables(nmax, t1, t2, k1, k2, t, k)
    fac = [mp.factorial(i) for i in range(nmax)]
    xp = [x**i for i in range(nmax)]
    yp = [y**i for i in range(nmax)]
    total = mp.mpc(0)
    for m in range(nmax):
        for n in range(nmax - m):
            num = A[m + n] * B1[m] * B2[n] * J[m + n] * DX[m] * DY[n]
            if num == 0:
                continue
            total += num / (C1[m] * C2[n] * fac[m] * fac[n]) * xp[m] * yp[n]
    return complex(total)


def kdf_direct(A, B, C, D, E, F, x, y, nmax=120):
    """Kampé de Fériet sum (A)_{m+n}(B)_m(C)_n / ((D)_{m+n}(E)_m(F)_n m! n!) x^m y^n."""
    x, y = mp.mpc(x), mp.mpc(y)

    def prod_table(params):
        out = []
        for i in range(nmax):
            v = mp.mpc(1)
            for p in params:
                v *= rf(p, i)
            out.append(v)
        return out

    TA, TB, TC, TD, TE, TF = (prod_table(r) for r in (A, B, C, D, E, F))
    fac = [mp.factorial(i) for i in range(nmax)]
    total = mp.mpc(0)
    for m in range(nmax):
        for n in range(nmax - m):
            num = TA[m + n] * TB[m] * TC[n]
            if num == 0:
                continue
            total += num / (TD[m + n] * TE[m] * TF[n] * fac[m] * fac[n]) * x**m * y**n
    return complex(total)


def appell_f2(a, b1, b2, c1, c2, x, y):
    """Classical F2 through mpmath's own implementation."""
    return complex(mp.appellf2(a, b1, b2, c1, c2, x, y))


def humbert_psi(kind: str, a, b1, c1, c2, x, y, *, t1=0, t2=0, k1=0, k2=0, t=None, k=None, nmax=120):
    """Discrete Humbert psi1 (b1 kept) or psi2 (no b) by direct summation."""
    x, y = mp.mpc(x), mp.mpc(y)
    A = _table(rf, a, nmax)
    B1 = _table(rf, b1, nmax) if kind == "Psi1" else [mp.mpc(1)] * nmax
    C1, C2 = _table(rf, c1, nmax), _table(rf, c2, nmax)
    J, DX, DY = _disc_tables(nmax, t1, t2, k1, k2, t, k)
    fac = [mp.factorial(i) for i in range(nmax)]
    total = mp.mpc(0)
    for m in range(nmax):
        for n in range(nmax - m):
            num = A[m + n] * B1[m] * J[m + n] * DX[m] * DY[n]
            if num == 0:
                continue
            total += num / (C1[m] * C2[n] * fac[m] * fac[n]) * x**m * y**n
    return complex(total)


def gamma(z):
    return complex(mp.gamma(z))


def rel_err(got, ref) -> float:
    ref = complex(ref)
    return abs(complex(got) - ref) / max(abs(ref), 1e-300)
