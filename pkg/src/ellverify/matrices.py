"""Lower-triangular operators: the matrix M, Warnaar's pair and Bressoud's pair."""

from __future__ import annotations

import random
import threading
from typing import Callable, Mapping, Optional

import gmpy2
from gmpy2 import mpc, mpfr

from .numerics import DEFAULT_CONTEXT, DomainError, NumericContext, cval, rel_error
from .theta import Kernel


def _binom2(k: int) -> int:
    return k * (k - 1) // 2


class LowerTriangularOperator:
    """Infinite lower-triangular matrix given by an entry function.

    ``entry(k, m, kernel)`` is only consulted for ``m <= k``; entries above
    the diagonal are zero by construction.  Entries are memoised.
    """

    def __init__(
        self,
        entry: Callable[[int, int, Kernel], mpc],
        params: Optional[Mapping[str, mpc]] = None,
        ctx: NumericContext = DEFAULT_CONTEXT,
        name: str = "",
    ):
        self._entry = entry
        self.params = dict(params or {})
        self.ctx = ctx
        self.name = name
        self._kernel = Kernel(ctx)
        self._cache: dict = {}
        self._lock = threading.Lock()

    def __call__(self, k: int, m: int) -> mpc:
        if m > k or m < 0:
            return mpc(0)
        key = (k, m)
        v = self._cache.get(key)
        if v is None:
            with self._lock, self.ctx.activate():
                v = self._cache.get(key)
                if v is None:
                    v = self._cache[key] = self._entry(k, m, self._kernel)
        return v

    entry = __call__

    @property
    def min_denominator(self) -> float:
        """Smallest denominator theta modulus met while filling entries."""
        return self._kernel.min_den

    def __repr__(self) -> str:
        return f"LowerTriangularOperator({self.name or 'anonymous'})"

    def rows(self, n: int) -> list[list[mpc]]:
        return [[self(k, m) for m in range(n)] for k in range(n)]

    def scaled(self, k: int, m: int, factor) -> "LowerTriangularOperator":
        """Copy with entry (k, m) multiplied by ``factor`` (fault injection)."""
        base = self
        factor = cval(factor)

        def entry(i, j, K):
            v = base(i, j)
            return v * factor if (i, j) == (k, m) else v

        return LowerTriangularOperator(entry, self.params, self.ctx, f"{self.name}*")


def identity_operator(ctx: NumericContext = DEFAULT_CONTEXT) -> LowerTriangularOperator:
    return LowerTriangularOperator(lambda k, m, K: mpc(1) if k == m else mpc(0), ctx=ctx, name="I")


def from_rows(rows, ctx: NumericContext = DEFAULT_CONTEXT, name: str = "") -> LowerTriangularOperator:
    """Operator backed by a finite lower-triangular array (zero outside it)."""
    n = len(rows)

    def entry(k, m, K):
        return cval(rows[k][m]) if k < n else mpc(0)

    return LowerTriangularOperator(entry, ctx=ctx, name=name)


def _nonzero(x: mpc, what: str) -> mpc:
    if x == 0:
        raise DomainError(f"vanishing denominator factor in {what}")
    return x


def m_entry_k(a, b, q, p, k: int, m: int, K: Kernel) -> mpc:
    """M_{km}(a, b, q, p) using an active kernel."""
    if m > k:
        return mpc(0)
    qk = q**k
    num = K.facs([a * qk, 1 / qk], q, p, m)
    den = K.dfacs([b * q / (a * qk), b * q * qk], q, p, m)
    return num / _nonzero(den, "M")


def m_entry(a, b, q, p, k: int, m: int, ctx: NumericContext = DEFAULT_CONTEXT) -> mpc:
    """(aq^k, q^-k; q, p)_m / (bq^(1-k)/a, bq^(1+k); q, p)_m."""
    with ctx.activate():
        a, b, q, p = map(cval, (a, b, q, p))
        return m_entry_k(a, b, q, p, k, m, Kernel(ctx))


def warnaar_F(a, b, q, p, ctx: NumericContext = DEFAULT_CONTEXT) -> LowerTriangularOperator:
    with ctx.activate():
        a, b, q, p = map(cval, (a, b, q, p))

    def entry(k, m, K):
        qk = q**k
        out = K.th(a * q ** (2 * m), p) * K.facs([b * qk, 1 / qk], q, p, m) * K.fac(b / a, q, p, k)
        out /= _nonzero(K.dfacs([a * q * qk, a * q / (qk * b)], q, p, m), "F")
        return out * (-a / b) ** m * q ** (m * (m + 1) // 2)

    return LowerTriangularOperator(entry, dict(a=a, b=b, q=q, p=p), ctx, "F")


def warnaar_G(a, b, q, p, ctx: NumericContext = DEFAULT_CONTEXT) -> LowerTriangularOperator:
    """Inverse of :func:`warnaar_F`.

    The factor ``(aq^(m+1); q, p)_(k-1)`` has length -1 at k = 0; it is read
    as ``1 / theta(aq^m)``, the value forced by ``(GF)_00 = 1``.
    """
    with ctx.activate():
        a, b, q, p = map(cval, (a, b, q, p))

    def entry(k, m, K):
        qk, qm = q**k, q**m
        out = K.th(b * qm * qm, p) * K.fac(a * qm * q, q, p, k - 1) * K.fac(a / b, q, p, k)
        out *= K.fac(1 / qk, q, p, m)
        den = K.dfacs([b * q / (qk * a), q], q, p, m) * K.dfac(q, q, p, k) * K.dfac(b * qm, q, p, k + 1)
        out /= _nonzero(den, "G")
        return out * (-b / a) ** k * q ** (m - _binom2(k))

    return LowerTriangularOperator(entry, dict(a=a, b=b, q=q, p=p), ctx, "G")


def bressoud_B(a, b, q, p, ctx: NumericContext = DEFAULT_CONTEXT) -> LowerTriangularOperator:
    with ctx.activate():
        a, b, q, p = map(cval, (a, b, q, p))

    def entry(k, m, K):
        num = K.fac(b, q, p, k + m) * K.fac(b / a, q, p, k - m)
        den = K.dfac(a * q, q, p, k + m) * K.dfac(q, q, p, k - m)
        return num / _nonzero(den, "B")

    return LowerTriangularOperator(entry, dict(a=a, b=b, q=q, p=p), ctx, "B")


def bressoud_B_inv(a, b, q, p, ctx: NumericContext = DEFAULT_CONTEXT) -> LowerTriangularOperator:
    with ctx.activate():
        a, b, q, p = map(cval, (a, b, q, p))

    def entry(k, m, K):
        out = K.th(a * q ** (2 * k), p) / K.dth(a, p) * K.th(b * q ** (2 * m), p) / K.dth(b, p)
        out *= K.fac(a, q, p, m + k) * K.fac(a / b, q, p, k - m)
        out /= _nonzero(K.dfac(b * q, q, p, m + k) * K.dfac(q, q, p, k - m), "B^-1")
        return out * (b / a) ** (k - m)

    return LowerTriangularOperator(entry, dict(a=a, b=b, q=q, p=p), ctx, "B^-1")


def _product_residual(F, G, N: int) -> mpfr:
    worst = mpfr(0)
    for k in range(N):
        for m in range(k + 1):
            s = mpc(0)
            for j in range(m, k + 1):
                s += F(k, j) * G(j, m)
            if k == m:
                s -= 1
            worst = max(worst, abs(s))
    return worst


def inverse_residual(
    F: LowerTriangularOperator, G: LowerTriangularOperator, N: int, ctx: NumericContext = DEFAULT_CONTEXT
) -> mpfr:
    """max |(FG - I)_{km}| and |(GF - I)_{km}| over 0 <= m <= k < N."""
    if N < 1:
        raise ValueError("N must be at least 1")
    with ctx.activate():
        return max(_product_residual(F, G, N), _product_residual(G, F, N))


def max_entry(op: LowerTriangularOperator, N: int) -> mpfr:
    return max(abs(op(k, m)) for k in range(N) for m in range(k + 1))


def diagonal_cross_ratio_defect(a, b, q, p, N: int = 9, ctx: NumericContext = DEFAULT_CONTEXT) -> mpfr:
    """Worst deviation from 1 of r(k,m) r(k',m') / (r(k,m') r(k',m)).

    ``r(k, m) = M_{km}(b, a, q, p) / B_{km}(a, b)`` over
    ``0 <= m < m' <= k < k' < N``.  The ratio is 1 exactly when M(b, a)
    is B multiplied on each side by diagonal matrices.
    """
    with ctx.activate():
        a, b, q, p = map(cval, (a, b, q, p))
        B = bressoud_B(a, b, q, p, ctx)
        K = Kernel(ctx)
        r = {}
        for k in range(N):
            for m in range(k + 1):
                r[k, m] = m_entry_k(b, a, q, p, k, m, K) / B(k, m)
        worst = mpfr(0)
        for k in range(N):
            for k2 in range(k + 1, N):
                for m in range(k + 1):
                    for m2 in range(m + 1, k + 1):
                        cr = r[k, m] * r[k2, m2] / (r[k, m2] * r[k2, m])
                        worst = max(worst, rel_error(cr, 1))
        return worst


def random_triangular(n: int, rng: random.Random, ctx: NumericContext = DEFAULT_CONTEXT) -> list[list[mpc]]:
    """Random n x n lower-triangular array with diagonal moduli in [0.5, 2]."""
    import cmath

    with ctx.activate():
        rows = []
        for k in range(n):
            row = []
            for m in range(n):
                if m > k:
                    row.append(mpc(0))
                    continue
                r = rng.uniform(0.5, 2.0) if m == k else rng.uniform(0.0, 1.0)
                row.append(mpc(cmath.rect(r, rng.uniform(0.0, 2 * cmath.pi))))
            rows.append(row)
        return rows


def forward_inverse(rows, ctx: NumericContext = DEFAULT_CONTEXT) -> list[list[mpc]]:
    """Inverse of a lower-triangular array by forward substitution."""
    n = len(rows)
    with ctx.activate():
        inv = [[mpc(0)] * n for _ in range(n)]
        for col in range(n):
            inv[col][col] = 1 / rows[col][col]
            for k in range(col + 1, n):
                s = mpc(0)
                for j in range(col, k):
                    s += rows[k][j] * inv[j][col]
                inv[k][col] = -s / rows[k][k]
        return inv
