"""Modified Jacobi theta function and theta shifted factorials.

``theta(a, p)`` is ``(a; p)_inf (p/a; p)_inf`` and ``(a; q, p)_k`` is the
product ``theta(a) theta(aq) ... theta(aq^(k-1))``.  At ``p = 0`` they reduce
to ``1 - a`` and the ordinary q-shifted factorial.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import gmpy2
from gmpy2 import mpc

from .numerics import DEFAULT_CONTEXT, DomainError, NumericContext, cval

GUARD_TERMS = 4


@dataclass(frozen=True)
class FactorialArgs:
    a: mpc
    q: mpc
    p: mpc
    k: int

    def __post_init__(self) -> None:
        if self.k < 0:
            raise ValueError(f"factorial length must be non-negative, got {self.k}")


def truncation_depth(a: mpc, p: mpc, log_eps: float) -> int:
    """Number of factor pairs kept in the theta product (guard terms included)."""
    abs_p = abs(p)
    if abs_p == 0:
        return 1
    abs_a = abs(a)
    log_m = max(abs(float(gmpy2.log(abs_a))), 0.0)
    depth = math.ceil((log_eps - log_m) / float(gmpy2.log(abs_p)))
    return max(depth, 1) + GUARD_TERMS


class _NomeTable:
    """Powers p^j and the constants 1 + p^(2j+1) for one nome."""

    __slots__ = ("p", "powers", "consts")

    def __init__(self, p: mpc):
        self.p = p
        self.powers = [mpc(1)]
        self.consts = [1 + p]

    def extend(self, n: int) -> None:
        p = self.p
        powers, consts = self.powers, self.consts
        while len(powers) < n:
            nxt = powers[-1] * p
            powers.append(nxt)
            consts.append(1 + nxt * nxt * p)


def _check_theta_args(a: mpc, p: mpc) -> None:
    # at p = 0, theta(a; 0) = 1 - a extends continuously to a = 0
    if a == 0 and p != 0:
        raise DomainError("theta(a; p) requires a != 0 unless p = 0")
    if not abs(p) < 1:
        raise DomainError(f"theta(a; p) requires |p| < 1, got |p| = {float(abs(p)):g}")


def _theta_product(a: mpc, table: _NomeTable, log_eps: float) -> mpc:
    p = table.p
    depth = truncation_depth(a, p, log_eps)
    table.extend(depth)
    # (1 - a p^j)(1 - p^(j+1)/a) = 1 + p^(2j+1) - p^j (a + p/a)
    s = a + p / a
    powers, consts = table.powers, table.consts
    acc = consts[0] - s
    for j in range(1, depth):
        acc *= consts[j] - powers[j] * s
    return acc


def theta(a, p, ctx: NumericContext = DEFAULT_CONTEXT) -> mpc:
    """Modified Jacobi theta function theta(a; p)."""
    with ctx.activate():
        a, p = cval(a), cval(p)
        _check_theta_args(a, p)
        if p == 0:
            return 1 - a
        return _theta_product(a, _NomeTable(p), ctx.log_theta_epsilon)


def qp_factorial(args: FactorialArgs, ctx: NumericContext = DEFAULT_CONTEXT) -> mpc:
    """(a; q, p)_k."""
    with ctx.activate():
        return Kernel(ctx).fac(cval(args.a), cval(args.q), cval(args.p), args.k)


def qp_factorial_multi(
    args_list: Sequence, q, p, k: int, ctx: NumericContext = DEFAULT_CONTEXT
) -> mpc:
    """(a_1, ..., a_r; q, p)_k as a product of single factorials."""
    if k < 0:
        raise ValueError(f"factorial length must be non-negative, got {k}")
    with ctx.activate():
        kern = Kernel(ctx)
        q, p = cval(q), cval(p)
        out = mpc(1)
        for a in args_list:
            out *= kern.fac(cval(a), q, p, k)
        return out


class _Prefix:
    __slots__ = ("step", "arg", "values", "mins")

    def __init__(self, x: mpc, q: mpc):
        self.step = q
        self.arg = x
        self.values = [mpc(1)]
        self.mins = [math.inf]


class Kernel:
    """Memoising evaluator used inside one trial.

    Prefix products of each ``(x; q, p)_k`` are cached so a terminating sum
    costs O(n) theta evaluations per distinct argument.  Theta factors that
    enter a denominator are tracked: ``min_den`` is the smallest modulus seen,
    which is what the pole predicates test.  The caller must have activated
    the context's precision.
    """

    def __init__(self, ctx: NumericContext = DEFAULT_CONTEXT):
        self.ctx = ctx
        self.log_eps = ctx.log_theta_epsilon
        self._nomes: dict = {}
        self._thetas: dict = {}
        self._prefixes: dict = {}
        self.min_den = math.inf
        self.theta_calls = 0

    def reset_poles(self) -> None:
        self.min_den = math.inf

    def _table(self, p: mpc) -> _NomeTable:
        t = self._nomes.get(p)
        if t is None:
            t = self._nomes[p] = _NomeTable(p)
        return t

    def th(self, a: mpc, p: mpc) -> mpc:
        key = (a, p)
        v = self._thetas.get(key)
        if v is None:
            _check_theta_args(a, p)
            self.theta_calls += 1
            if p == 0:
                v = 1 - a
            else:
                v = _theta_product(a, self._table(p), self.log_eps)
            self._thetas[key] = v
        return v

    def dth(self, a: mpc, p: mpc) -> mpc:
        """theta(a; p) destined for a denominator."""
        v = self.th(a, p)
        m = float(abs(v))
        if m < self.min_den:
            self.min_den = m
        return v

    def _prefix(self, x: mpc, q: mpc, p: mpc, k: int) -> _Prefix:
        key = (x, q, p)
        pre = self._prefixes.get(key)
        if pre is None:
            pre = self._prefixes[key] = _Prefix(x, q)
        vals, mins = pre.values, pre.mins
        while len(vals) <= k:
            t = self.th(pre.arg, p)
            vals.append(vals[-1] * t)
            mins.append(min(mins[-1], float(abs(t))))
            pre.arg = pre.arg * q
        return pre

    def fac(self, x: mpc, q: mpc, p: mpc, k: int) -> mpc:
        """(x; q, p)_k; negative k uses 1 / prod_{j=1}^{|k|} theta(x q^-j)."""
        if k >= 0:
            return self._prefix(x, q, p, k).values[k]
        out = mpc(1)
        y = x
        for _ in range(-k):
            y = y / q
            out *= self.th(y, p)
        return 1 / out

    def dfac(self, x: mpc, q: mpc, p: mpc, k: int) -> mpc:
        """(x; q, p)_k destined for a denominator (pole-tracked)."""
        if k < 0:
            return self.fac(x, q, p, k)
        pre = self._prefix(x, q, p, k)
        if pre.mins[k] < self.min_den:
            self.min_den = pre.mins[k]
        return pre.values[k]

    def facs(self, xs: Iterable[mpc], q: mpc, p: mpc, k: int) -> mpc:
        out = mpc(1)
        for x in xs:
            out *= self.fac(x, q, p, k)
        return out

    def dfacs(self, xs: Iterable[mpc], q: mpc, p: mpc, k: int) -> mpc:
        out = mpc(1)
        for x in xs:
            out *= self.dfac(x, q, p, k)
        return out

    def ratio(self, num: Iterable[mpc], den: Iterable[mpc], q: mpc, p: mpc, k: int) -> mpc:
        """(num; q, p)_k / (den; q, p)_k."""
        return self.facs(num, q, p, k) / self.dfacs(den, q, p, k)
