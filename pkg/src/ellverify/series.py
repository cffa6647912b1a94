"""Terminating sums and the elliptic balancing linter.

A :class:`SeriesForm` describes a summand built from theta shifted
factorials with arbitrary base/nome powers.  The same description is used to
evaluate the sum and to derive the term ratio ``t(j+1)/t(j)`` as a product of
theta factors in ``z = q^j``, which is what the linter inspects.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from math import gcd
from typing import Callable, Mapping, Optional, Sequence

import gmpy2
from gmpy2 import mpc

from .numerics import (
    DEFAULT_CONTEXT,
    DivisionByZero,
    DomainError,
    EvaluationError,
    NumericContext,
    cval,
    rel_error,
)
from .theta import Kernel


@dataclass
class Summand:
    """``sum_{j=0}^{n} term(j, env)``."""

    term: Callable[[int, Mapping], mpc]
    n: int
    env: Mapping = field(default_factory=dict)

    def __call__(self, j: int) -> mpc:
        return self.term(j, self.env)


def sum_terminating(s: Summand, ctx: NumericContext = DEFAULT_CONTEXT) -> mpc:
    with ctx.activate():
        acc = mpc(0)
        for j in range(s.n + 1):
            t = cval(s(j))
            if not gmpy2.is_finite(t):
                raise EvaluationError(f"term {j} is not finite: {t}")
            acc += t
        return acc


def term_ratio(s: Summand, j: int, ctx: NumericContext = DEFAULT_CONTEXT) -> mpc:
    if not 0 <= j < s.n:
        raise ValueError(f"ratio index {j} outside 0..{s.n - 1}")
    with ctx.activate():
        t0 = cval(s(j))
        if t0 == 0:
            raise DivisionByZero(f"term {j} vanishes")
        return cval(s(j + 1)) / t0


# -- declarative summands ---------------------------------------------------


@dataclass(frozen=True)
class Fac:
    """``(x; q^base, p^nome)_(mult*j)`` as a summand factor."""

    x: mpc
    base: int = 1
    nome: int = 1
    mult: int = 1


@dataclass(frozen=True)
class WP:
    """Very-well-poised factor ``theta(x q^(step*j); p^nome) / theta(x; p^nome)``."""

    x: mpc
    step: int = 2
    nome: int = 1


@dataclass
class SeriesForm:
    q: mpc
    p: mpc
    num: Sequence[Fac] = ()
    den: Sequence[Fac] = ()
    wp: Sequence[WP] = ()
    ratio: mpc = mpc(1)
    # factors that are not products of j-factorials (sequences, k-shifted
    # arguments); a form with ``extra`` is evaluable but not lintable
    extra: Optional[Callable[[int, Kernel], mpc]] = None

    def _qp(self, base: int, nome: int):
        return self.q**base, self.p**nome

    def term(self, j: int, K: Kernel) -> mpc:
        out = self.ratio**j if j else mpc(1)
        for f in self.num:
            qb, pt = self._qp(f.base, f.nome)
            out *= K.fac(f.x, qb, pt, f.mult * j)
        for f in self.den:
            qb, pt = self._qp(f.base, f.nome)
            out /= K.dfac(f.x, qb, pt, f.mult * j)
        for w in self.wp:
            pt = self.p**w.nome
            out *= K.th(w.x * self.q ** (w.step * j), pt) / K.dth(w.x, pt)
        if self.extra is not None:
            out *= self.extra(j, K)
        return out

    def total(self, n: int, K: Kernel) -> mpc:
        acc = mpc(0)
        for j in range(n + 1):
            acc += self.term(j, K)
        return acc

    def summand(self, n: int, K: Kernel) -> Summand:
        return Summand(lambda j, env: self.term(j, K), n)

    def ratio_factors(self) -> list[tuple[mpc, int, int, int]]:
        """Term ratio as ``(c, e, t, sign)`` meaning ``theta(c z^e; p^t)^sign``."""
        if self.extra is not None:
            raise ValueError("summand has non-factorial factors; ratio is not a theta quotient")
        out = []
        for sign, facs in ((1, self.num), (-1, self.den)):
            for f in facs:
                step = self.q**f.base
                x = f.x
                for _ in range(f.mult):
                    out.append((x, f.base * f.mult, f.nome, sign))
                    x = x * step
        for w in self.wp:
            out.append((w.x * self.q**w.step, w.step, w.nome, 1))
            out.append((w.x, w.step, w.nome, -1))
        return out


# -- theta ratios and the linter ---------------------------------------------


@dataclass
class ThetaRatio:
    """``prefactor * prod theta(a_i z) / prod theta(b_i z)`` over one nome."""

    numerator_args: list
    denominator_args: list
    prefactor: mpc = mpc(1)

    def __post_init__(self) -> None:
        if not self.numerator_args and not self.denominator_args:
            raise ValueError("a theta ratio needs at least one factor")

    def __call__(self, z, p, K: Kernel) -> mpc:
        out = cval(self.prefactor)
        for a in self.numerator_args:
            out *= K.th(a * z, p)
        for b in self.denominator_args:
            out /= K.dth(b * z, p)
        return out


def balancing_check(tr: ThetaRatio, ctx: NumericContext = DEFAULT_CONTEXT) -> bool:
    """True iff the numerator and denominator arguments have equal products."""
    with ctx.activate():
        num = mpc(1)
        for a in tr.numerator_args:
            num *= cval(a)
        den = mpc(1)
        for b in tr.denominator_args:
            den *= cval(b)
        if den == 0 or num == 0:
            return num == den
        return bool(rel_error(num / den, 1) < ctx.rel_tolerance)


def ellipticity_check(
    tr: ThetaRatio, p, z_samples: Sequence, ctx: NumericContext = DEFAULT_CONTEXT
) -> float:
    """Largest ``rel_error(g(z), g(pz))`` over the samples."""
    with ctx.activate():
        p = cval(p)
        if not abs(p) < 1:
            raise DomainError("ellipticity check needs |p| < 1")
        K = Kernel(ctx)
        worst = 0.0
        for z in z_samples:
            z = cval(z)
            K.reset_poles()
            g0 = tr(z, p, K)
            g1 = tr(p * z, p, K)
            if K.min_den < ctx.pole_delta:
                raise DomainError(f"sample z={complex(z)} is within pole_delta of a pole")
            worst = max(worst, float(rel_error(g0, g1)))
        return worst


def common_nome_power(factors) -> int:
    """Smallest N with e*N/t integral for every factor (c, e, t, sign)."""
    n = 1
    for _, e, t, _ in factors:
        need = t // gcd(t, e)
        n = n * need // gcd(n, need)
    return n


def to_theta_ratio(form: SeriesForm, ctx: NumericContext = DEFAULT_CONTEXT) -> tuple[ThetaRatio, mpc]:
    """Rewrite a form's term ratio over the single nome ``P = p^N`` in ``z``.

    Uses the exact identities
    ``theta(y; p^t) = prod_{s<r} theta(y p^(ts); p^(tr))`` and
    ``theta(y^e; P^e) = prod_{w^e=1} theta(w y; P)``.
    Returns the ratio together with ``P``.
    """
    with ctx.activate():
        factors = form.ratio_factors()
        N = common_nome_power(factors)
        p = form.p
        num: list = []
        den: list = []
        for c, e, t, sign in factors:
            r = e * N // t
            target = num if sign > 0 else den
            for s in range(r):
                y = c * p ** (t * s)
                delta = y if e == 1 else y ** (gmpy2.mpfr(1) / e)
                for i in range(e):
                    w = gmpy2.root_of_unity(e, i) if e > 1 else mpc(1)
                    target.append(w * delta)
        return ThetaRatio(num, den, form.ratio), p**N


@dataclass
class LintResult:
    counts_match: bool
    balanced: bool
    max_deviation: float
    nome_power: int

    @property
    def ok(self) -> bool:
        return self.counts_match and self.balanced


def lint_form(
    form: SeriesForm,
    ctx: NumericContext = DEFAULT_CONTEXT,
    samples: int = 3,
    seed: int = 0,
) -> LintResult:
    """Balancing test plus a numerical z -> Pz invariance test."""
    tr, P = to_theta_ratio(form, ctx)
    counts = len(tr.numerator_args) == len(tr.denominator_args)
    balanced = balancing_check(tr, ctx)
    rng = random.Random(seed)
    dev = math.inf
    # resample z until no sample sits on a pole
    for _ in range(50):
        zs = [complex(rng.uniform(0.6, 1.4), rng.uniform(-0.4, 0.4)) for _ in range(samples)]
        try:
            dev = ellipticity_check(tr, P, zs, ctx)
            break
        except DomainError:
            continue
    return LintResult(counts, balanced, dev, common_nome_power(form.ratio_factors()))


def perturb_factor(form: SeriesForm, index: int = 0, factor=1.01, where: str = "num") -> SeriesForm:
    """Copy of ``form`` with one factorial argument multiplied by ``factor``."""
    facs = list(form.num if where == "num" else form.den)
    f = facs[index]
    facs[index] = Fac(f.x * cval(factor), f.base, f.nome, f.mult)
    if where == "num":
        return SeriesForm(form.q, form.p, facs, form.den, form.wp, form.ratio, form.extra)
    return SeriesForm(form.q, form.p, form.num, facs, form.wp, form.ratio, form.extra)
