"""The inverse-pair lemma and the four expansion formulas E1-E4.

Each expansion is written out as three pieces: the
prefactor and summand of the left-hand sum, and the outer weight and inner
summand of the right-hand double sum.  E1 is additionally rebuilt from the
lemma with Warnaar's pair, as an independent route to the same values.
"""

from __future__ import annotations

import cmath
import random
from dataclasses import dataclass
from types import SimpleNamespace
from typing import Callable, Optional, Sequence, Union

from gmpy2 import mpc

from .identities.core import ArityError, IdentitySpec, Sides, geom
from .matrices import (
    LowerTriangularOperator,
    inverse_residual,
    m_entry_k,
    warnaar_F,
    warnaar_G,
)
from .numerics import DEFAULT_CONTEXT, EvaluationError, NumericContext, cval
from .theta import Kernel

SequenceLike = Union[Callable[[int], mpc], Sequence]


class SequenceInput:
    """A finite stretch ``alpha_0, ..., alpha_nmax`` of an arbitrary sequence."""

    def __init__(self, values: SequenceLike, n_max: Optional[int] = None):
        if callable(values):
            self._fn = values
            self.n_max = n_max
        else:
            vals = [cval(v) for v in values]
            self._fn = vals.__getitem__
            self.n_max = len(vals) - 1 if n_max is None else n_max

    def __call__(self, j: int) -> mpc:
        if self.n_max is not None and not 0 <= j <= self.n_max:
            raise IndexError(f"sequence index {j} outside 0..{self.n_max}")
        return cval(self._fn(j))

    @classmethod
    def random(cls, rng: random.Random, n_max: int, lo: float = 0.25, hi: float = 1.0) -> "SequenceInput":
        vals = [mpc(cmath.rect(rng.uniform(lo, hi), rng.uniform(0.0, 2 * cmath.pi))) for _ in range(n_max + 1)]
        return cls(vals)


def lemma_lhs(H: LowerTriangularOperator, alpha: SequenceLike, n: int, ctx: NumericContext = DEFAULT_CONTEXT) -> mpc:
    """sum_j H_{nj} alpha_j."""
    if n < 0:
        raise ValueError("order must be non-negative")
    alpha = alpha if isinstance(alpha, SequenceInput) else SequenceInput(alpha)
    with ctx.activate():
        acc = mpc(0)
        for j in range(n + 1):
            acc += H(n, j) * alpha(j)
        return acc


def lemma_rhs(
    F: LowerTriangularOperator,
    G: LowerTriangularOperator,
    H: LowerTriangularOperator,
    alpha: SequenceLike,
    n: int,
    ctx: NumericContext = DEFAULT_CONTEXT,
    check_inverse: bool = False,
) -> mpc:
    """sum_k F_{nk} sum_{j<=k} alpha_j sum_{m<=k-j} G_{k,j+m} H_{j+m,j}."""
    if n < 0:
        raise ValueError("order must be non-negative")
    alpha = alpha if isinstance(alpha, SequenceInput) else SequenceInput(alpha)
    if check_inverse:
        res = inverse_residual(F, G, n + 1, ctx)
        if not res < 1e3 * ctx.rel_tolerance:
            raise EvaluationError(f"F and G are not inverse to working accuracy (residual {float(res):.2e})")
    with ctx.activate():
        acc = mpc(0)
        for k in range(n + 1):
            inner = mpc(0)
            for j in range(k + 1):
                gh = mpc(0)
                for m in range(k - j + 1):
                    gh += G(k, j + m) * H(j + m, j)
                inner += alpha(j) * gh
            acc += F(n, k) * inner
        return acc


# -- hand-written expansions ---------------------------------------------------


@dataclass(frozen=True)
class Expansion:
    """Pieces of an expansion formula.

    ``lhs = prefactor(n) * sum_j lhs_term(n, j) A_j`` and
    ``rhs = sum_k outer(n, k) * sum_j inner(k, j) A_j``.
    """

    prefactor: Callable
    lhs_term: Callable
    outer: Callable
    inner: Callable
    # (a, b, base, nome) arguments of the M entries in the two sums
    lhs_m: Callable
    inner_m: Callable

    def lhs(self, v, n, K, A):
        s = mpc(0)
        for j in range(n + 1):
            s += self.lhs_term(v, n, j, K) * A(j)
        return self.prefactor(v, n, K) * s

    def rhs(self, v, n, K, A):
        total = mpc(0)
        for k in range(n + 1):
            s = mpc(0)
            for j in range(k + 1):
                s += self.inner(v, k, j, K) * A(j)
            total += self.outer(v, n, k, K) * s
        return total


# E1: equivalent to the elliptic WP Bailey lemma


def _e1_prefactor(v, n, K):
    a, b, c, d, q, p = v.a, v.b, v.c, v.d, v.q, v.p
    return K.ratio([a * q, c / b, d, b * c * q / (a * d)], [c / a, b * q, c * q / d, a * d / b], q, p, n)


def _e1_lhs_term(v, n, j, K):
    a, b, c, d, q, p = v.a, v.b, v.c, v.d, v.q, v.p
    qn = q**n
    return K.ratio([c * qn, 1 / qn, b * q / d, a * d / c],
                   [b * q / (c * qn), b * q * qn, d, b * c * q / (a * d)], q, p, j)


def _e1_outer(v, n, k, K):
    a, b, c, d, q, p = v.a, v.b, v.c, v.d, v.q, v.p
    qn = q**n
    out = K.th(a * q ** (2 * k), p) / K.dth(a, p)
    out *= K.ratio([a, 1 / qn, c * qn, a / b, a * d / c, b * q / d],
                   [q, a * q * qn, a * q / (c * qn), b * q, c * q / d, a * d / b], q, p, k)
    return out * geom(q, k)


def _e1_inner(v, k, j, K):
    a, b, q, p = v.a, v.b, v.q, v.p
    qk = q**k
    return K.ratio([a * qk, 1 / qk], [b * q / (a * qk), b * q * qk], q, p, j)


E1 = Expansion(
    _e1_prefactor, _e1_lhs_term, _e1_outer, _e1_inner,
    lhs_m=lambda v: (v.c, v.b, v.q, v.p),
    inner_m=lambda v: (v.a, v.b, v.q, v.p),
)


# E2: (q^2, p^2) and (q, p) mixture


def _e2_prefactor(v, n, K):
    a, c, q, p = v.a, v.c, v.q, v.p
    q2, p2 = q * q, p * p
    out = K.th(-c * q ** (2 * n), p) / K.dth(-c, p)
    out *= K.ratio([-c, a * q], [-q, c / a], q, p, n)
    out *= K.fac(c / (a * q), q2, p2, n) / K.dfac(a * c * q**3, q2, p2, n)
    return out * geom(q, n)


def _e2_lhs_term(v, n, j, K):
    a, c, q, p = v.a, v.c, v.q, v.p
    q2, p2 = q * q, p * p
    q2n = q ** (2 * n)
    out = K.ratio([c * c * q2n, 1 / q2n], [a * q**3 / (c * q2n), a * c * q**3 * q2n], q2, p2, j)
    out *= K.fac(-a * q, q, p, 2 * j) / K.dfac(-c * q, q, p, 2 * j)
    return out * geom(a / c, j)


def _e2_outer(v, n, k, K):
    a, c, q, p = v.a, v.c, v.q, v.p
    q2, p2 = q * q, p * p
    qn = q**n
    out = K.th(a * a * q ** (4 * k), p2) / K.dth(a * a, p2)
    out *= K.ratio([c * qn, 1 / qn], [a * q / (c * qn), a * q * qn], q, p, k)
    out *= K.ratio([a * a, a / (c * q)], [q2, a * c * q**3], q2, p2, k)
    return out * geom(q2, k)


def _e2_inner(v, k, j, K):
    a, c, q, p = v.a, v.c, v.q, v.p
    q2, p2 = q * q, p * p
    q2k = q ** (2 * k)
    return K.ratio([a * a * q2k, 1 / q2k], [c * q**3 / (a * q2k), a * c * q**3 * q2k], q2, p2, j)


E2 = Expansion(
    _e2_prefactor, _e2_lhs_term, _e2_outer, _e2_inner,
    lhs_m=lambda v: (v.c * v.c, v.a * v.c * v.q, v.q * v.q, v.p * v.p),
    inner_m=lambda v: (v.a * v.a, v.a * v.c * v.q, v.q * v.q, v.p * v.p),
)


# E3: (q^2, p^2) outside, (q, p) in the inner sum


def _e3_prefactor(v, n, K):
    a, c, q, p = v.a, v.c, v.q, v.p
    q2, p2 = q * q, p * p
    a2 = a * a
    out = K.ratio([a2 * q2, a2 * q2 / c], [c / a2, c * c / a2], q2, p2, n)
    out *= K.fac(-c / a, q, p, 2 * n) / K.dfac(-a * q, q, p, 2 * n)
    return out * geom(c / (a2 * q), n)


def _e3_lhs_term(v, n, j, K):
    a, c, q, p = v.a, v.c, v.q, v.p
    q2, p2 = q * q, p * p
    a2 = a * a
    q2n = q ** (2 * n)
    return K.ratio([c * q2n, 1 / q2n], [c / (q2n * a2), c * c * q2n / a2], q2, p2, j)


def _e3_outer(v, n, k, K):
    a, c, q, p = v.a, v.c, v.q, v.p
    q2, p2 = q * q, p * p
    a2 = a * a
    q2n = q ** (2 * n)
    out = K.th(a * q ** (2 * k), p) / K.dth(a, p)
    out *= K.ratio([a, a2 * q / c], [q, c / a], q, p, k)
    out *= K.ratio([c * q2n, 1 / q2n], [a2 * q2 / (c * q2n), a2 * q2 * q2n], q2, p2, k)
    return out * geom(q, k)


def _e3_inner(v, k, j, K):
    a, c, q, p = v.a, v.c, v.q, v.p
    qk = q**k
    return K.ratio([a * qk, 1 / qk], [c / (qk * a * a), c * qk / a], q, p, j)


E3 = Expansion(
    _e3_prefactor, _e3_lhs_term, _e3_outer, _e3_inner,
    # M(c, c^2/a^2) and M(a, c/a) do not factor these summands; the q shifts are needed
    lhs_m=lambda v: (v.c, v.c * v.c / (v.a * v.a * v.q * v.q), v.q * v.q, v.p * v.p),
    inner_m=lambda v: (v.a, v.c / (v.a * v.q), v.q, v.p),
)


# E4: Lee-Rains-Warnaar based, (q, p) outside and (q, p^2) inside


def _e4_prefactor(v, n, K):
    a, c, q, p = v.a, v.c, v.q, v.p
    p2 = p * p
    out = K.ratio([a * q, a * q / c], [c / a, c * c / a], q, p, n)
    out *= K.fac(c * c / a, q, p2, 2 * n) / K.dfac(a * q, q, p2, 2 * n)
    return out


def _e4_lhs_term(v, n, j, K):
    a, c, q, p = v.a, v.c, v.q, v.p
    qn = q**n
    return K.ratio([c * qn, 1 / qn], [c / (qn * a), c * c * qn / a], q, p, j)


def _e4_outer(v, n, k, K):
    a, c, q, p = v.a, v.c, v.q, v.p
    p2 = p * p
    qn = q**n
    ap = a * p
    out = K.th(ap * q ** (2 * k), p2) / K.dth(ap, p2)
    out *= K.ratio([1 / qn, c * qn], [a * q * qn, a * q / (c * qn)], q, p, k)
    out *= K.ratio([ap, a * a * q / (c * c)], [q, c * c * p / a], q, p2, k)
    return out * geom(q, k)


def _e4_inner(v, k, j, K):
    a, c, q, p = v.a, v.c, v.q, v.p
    p2 = p * p
    qk = q**k
    return K.ratio([a * p * qk, 1 / qk], [c * c / (qk * a * a), c * c * p * qk / a], q, p2, j)


E4 = Expansion(
    _e4_prefactor, _e4_lhs_term, _e4_outer, _e4_inner,
    lhs_m=lambda v: (v.c, v.c * v.c / (v.a * v.q), v.q, v.p),
    inner_m=lambda v: (v.a * v.p, v.c * v.c * v.p / (v.a * v.q), v.q, v.p * v.p),
)

EXPANSIONS_BY_ID = {"E1": E1, "E2": E2, "E3": E3, "E4": E4}


def _sides(exp: Expansion) -> Sides:
    def lhs(v, n, K, A=None):
        if A is None:
            raise ArityError("expansion formulas need a sequence argument")
        return exp.lhs(v, n, K, A)

    def rhs(v, n, K, A=None):
        if A is None:
            raise ArityError("expansion formulas need a sequence argument")
        return exp.rhs(v, n, K, A)

    return Sides(lhs, rhs)


EXPANSIONS = (
    IdentitySpec(
        id="E1", title="First expansion (Spiridonov WP Bailey lemma form)", kind="expansion",
        label="ell-2", anchor="well-poised Bailey lemma given by Spiridonov",
        slots=("a", "b", "c", "d", "q", "p"), variants={"literal": _sides(E1)},
        base_nome_usage=("(q,p)",), sequence_slot=True,
    ),
    IdentitySpec(
        id="E2", title="Second expansion (Warnaar, (q^2,p^2)/(q,p))", kind="expansion",
        label="expansion2", anchor="is equivalent to Warnaar",
        slots=("a", "c", "q", "p"), variants={"literal": _sides(E2)},
        base_nome_usage=("(q,p)", "(q^2,p^2)"), sequence_slot=True,
    ),
    IdentitySpec(
        id="E3", title="Third expansion (Warnaar quadratic)", kind="expansion",
        label="expansion3", anchor="a WP Bailey lemma type result, due to Warnaar",
        slots=("a", "c", "q", "p"), variants={"literal": _sides(E3)},
        base_nome_usage=("(q,p)", "(q^2,p^2)"), sequence_slot=True,
    ),
    IdentitySpec(
        id="E4", title="Fourth expansion (new, via Lee-Rains-Warnaar)", kind="expansion",
        label="expansion5", anchor="to obtain the expansion formula",
        slots=("a", "c", "q", "p"), variants={"literal": _sides(E4)},
        base_nome_usage=("(q,p)", "(q,p^2)"), sequence_slot=True,
    ),
)


def expansion_side(
    id: str,
    params: dict,
    A: SequenceLike,
    n: int,
    side: str,
    ctx: NumericContext = DEFAULT_CONTEXT,
) -> mpc:
    """Evaluate one side of E1-E4 at order ``n`` for sequence ``A``."""
    spec = {s.id: s for s in EXPANSIONS}[id]
    seq = A if isinstance(A, SequenceInput) else SequenceInput(A)
    with ctx.activate():
        v = spec.env({k: cval(x) for k, x in params.items()})
        return spec.side(side.lower())(v, n, Kernel(ctx), seq)


# -- E1 through the lemma ------------------------------------------------------


def e1_operators(params: dict, ctx: NumericContext = DEFAULT_CONTEXT):
    """F, G, H and the alpha transform that turn the lemma into E1.

    ``F = F(a, c)``, ``G = G(a, c)``, ``H_{mj} = F_{mj}(b, c) K(m)``.
    """
    with ctx.activate():
        v = SimpleNamespace(**{k: cval(x) for k, x in params.items()})
        a, b, c, d, q, p = v.a, v.b, v.c, v.d, v.q, v.p
        F = warnaar_F(a, c, q, p, ctx)
        G = warnaar_G(a, c, q, p, ctx)
        Fb = warnaar_F(b, c, q, p, ctx)
        Kh = Kernel(ctx)

        def weight(m):
            return Kh.ratio([d, b * c * q / (a * d), a * q], [c * q / d, a * d / b, b * q], q, p, m)

        H = LowerTriangularOperator(lambda m, j, K: Fb(m, j) * weight(m), v.__dict__, ctx, "H")

        def alpha_from(A: SequenceInput) -> SequenceInput:
            def alpha(j):
                with ctx.activate():
                    out = geom(-c / (b * q), j) * Kh.th(b, p) / Kh.th(b * q ** (2 * j), p)
                    out *= Kh.ratio([a * d / c, b * q / d], [d, b * c * q / (a * d)], q, p, j)
                    return out * q ** (-(j * (j - 1) // 2)) * A(j)

            return SequenceInput(alpha, A.n_max)

        def normaliser(n):
            with ctx.activate():
                return Kh.th(b, p) * Kh.fac(c / a, q, p, n)

        return F, G, H, alpha_from, normaliser


def e1_via_lemma(params: dict, A: SequenceLike, n: int, ctx: NumericContext = DEFAULT_CONTEXT) -> tuple[mpc, mpc]:
    """Both sides of E1 obtained from the lemma instead of the explicit formula."""
    seq = A if isinstance(A, SequenceInput) else SequenceInput(A)
    F, G, H, alpha_from, normaliser = e1_operators(params, ctx)
    alpha = alpha_from(seq)
    lhs = lemma_lhs(H, alpha, n, ctx)
    rhs = lemma_rhs(F, G, H, alpha, n, ctx)
    with ctx.activate():
        z = normaliser(n)
        return lhs / z, rhs / z


def m_factor_defect(
    exp: Expansion, side: str, v, N: int, ctx: NumericContext = DEFAULT_CONTEXT
) -> float:
    """How far ``summand(n, j) / M_{nj}`` is from factoring as f(n) g(j).

    Returns the worst cross-ratio deviation over ``0 <= j < j' <= n < n' <= N``.
    """
    from .numerics import rel_error

    with ctx.activate():
        K = Kernel(ctx)
        margs = exp.lhs_m(v) if side == "lhs" else exp.inner_m(v)
        term = exp.lhs_term if side == "lhs" else exp.inner
        r = {}
        for n in range(N + 1):
            for j in range(n + 1):
                r[n, j] = term(v, n, j, K) / m_entry_k(*margs, n, j, K)
        worst = 0.0
        for n in range(N + 1):
            for n2 in range(n + 1, N + 1):
                for j in range(n + 1):
                    for j2 in range(j + 1, n + 1):
                        cr = r[n, j] * r[n2, j2] / (r[n, j2] * r[n2, j])
                        worst = max(worst, float(rel_error(cr, 1)))
        return worst
