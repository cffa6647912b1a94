"""Basic hypergeometric (p = 0) specialisations P1-P3 and their links to T3.

Square roots never get computed: P1 takes ``beta`` and ``gamma`` as slots
with ``b = beta^2`` and ``q = gamma^2``.
"""

from __future__ import annotations

from types import SimpleNamespace

from gmpy2 import mpc

from ..series import WP, Fac, SeriesForm
from .core import IdentitySpec, Sides


def _p1_derive(values):
    return {"b": values["beta"] ** 2, "q": values["gamma"] ** 2}


def _p1_series(v, n):
    a, b, c, d, q = v.a, v.b, v.c, v.d, v.q
    be, ga = v.beta, v.gamma
    qn = q**n
    return SeriesForm(
        q, mpc(0),
        num=[Fac(a), Fac(1 / qn), Fac(a * q / b), Fac(c), Fac(d), Fac(be), Fac(-be), Fac(be * ga), Fac(-be * ga),
             Fac(a**3 * q * qn / (b * c * d))],
        den=[Fac(q), Fac(a * q * qn), Fac(b), Fac(a * q / c), Fac(a * q / d), Fac(a * q / be), Fac(-a * q / be),
             Fac(a * ga / be), Fac(-a * ga / be), Fac(b * c * d / (qn * a * a))],
        wp=[WP(a, 2, 1)],
        ratio=q,
    )


def p1_prefactor(v, n, K) -> mpc:
    a, b, c, d, q, p = v.a, v.b, v.c, v.d, v.q, v.p
    a2q = a * a * q
    return K.ratio([a * q, a2q / (b * c), a2q / (b * d), a * q / (c * d)],
                   [a2q / b, a * q / c, a * q / d, a2q / (b * c * d)], q, p, n)


def _p1_rhs_sum(v, n, K) -> mpc:
    a, b, c, d, q, p = v.a, v.b, v.c, v.d, v.q, v.p
    qn = q**n
    a2q = a * a * q
    form = SeriesForm(
        q, p,
        num=[Fac(1 / qn), Fac(c), Fac(d), Fac(a**3 * q * qn / (b * c * d)), Fac(a2q / (b * b))],
        den=[Fac(a2q * qn / b), Fac(a2q / (b * c)), Fac(a2q / (b * d)), Fac(c * d / (a * qn)), Fac(q)],
        ratio=q,
    )
    return form.total(n, K)


def _p1_lhs(v, n, K, A=None):
    return _p1_series(v, n).total(n, K)


def _p1_rhs(v, n, K, A=None):
    return p1_prefactor(v, n, K) * _p1_rhs_sum(v, n, K)


# P2: Jackson-summed case c, d = +-aq/sqrt(b)


def _p2_series(v, n):
    a, b, q = v.a, v.b, v.q
    qn = q**n
    return SeriesForm(
        q, mpc(0),
        num=[Fac(1 / qn), Fac(a * qn / q), Fac(b * b * q), Fac(a * b * q * q, 2)],
        den=[Fac(a * b * q * qn), Fac(b * q * q / qn), Fac(q), Fac(a * b, 2)],
        ratio=q,
    )


def _p2_lhs(v, n, K, A=None):
    return _p2_series(v, n).total(n, K)


def _p2_rhs(v, n, K, A=None):
    a, b, q, p = v.a, v.b, v.q, v.p
    q2 = q * q
    out = K.ratio([a * b * q, b], [a / b, 1 / (b * q)], q, p, n)
    return out * K.ratio([a / (b * q), a / b], [a * b, a * b * q], q2, p, n)


# P3: c = -aq/sqrt(b), d = a sqrt(q/b), then q -> q^2, b -> b^2


def _p3_series(v, n):
    a, b, q = v.a, v.b, v.q
    q2 = q * q
    q2n = q ** (2 * n)
    return SeriesForm(
        q, mpc(0),
        num=[Fac(1 / q2n, 2), Fac(-a * q2 / b, 2), Fac(a * a * q2 / b**4, 2), Fac(-a * q2n / q, 2), Fac(a * q / b, 2)],
        den=[Fac(a * a * q2 * q2n / (b * b), 2), Fac(-a * q**3 / (b * b * q2n), 2), Fac(-a / b, 2), Fac(a * q / b, 2),
             Fac(q2, 2)],
        ratio=q2,
    )


def _p3_lhs(v, n, K, A=None):
    return _p3_series(v, n).total(n, K)


def _p3_rhs(v, n, K, A=None):
    a, b, q, p = v.a, v.b, v.q, v.p
    q2 = q * q
    out = K.ratio([-a * q / (b * b), a * a * q2 / (b * b)], [b * b, -b * b / (a * q)], q2, p, n)
    return out * K.ratio([b, -b / q], [a * q / b, -a / b], q, p, 2 * n)


SPECIALS = (
    IdentitySpec(
        id="P1", title="p = 0 case of T3: VWP balanced 12phi11 to nearly-poised 5phi4",
        kind="special-p0", label="special-tr-5", anchor="can be written as",
        slots=("a", "beta", "gamma", "c", "d"),
        variants={"literal": Sides(_p1_lhs, _p1_rhs, _p1_series)},
        base_nome_usage=("(q)",), elliptic=False, derive=_p1_derive, nome_slot=None,
    ),
    IdentitySpec(
        id="P2", title="Summation from P1 at c, d = +-aq/sqrt(b)",
        kind="special-p0", label="special-tr-5a", anchor="to yield a summation theorem",
        slots=("a", "b", "q"),
        variants={"literal": Sides(_p2_lhs, _p2_rhs, _p2_series)},
        base_nome_usage=("(q)", "(q^2)"), elliptic=False, nome_slot=None,
    ),
    IdentitySpec(
        id="P3", title="Summation from P1 at c = -aq/sqrt(b), d = a sqrt(q/b)",
        kind="special-p0", label="special-tr-5-b", anchor="replace q by q^2, and b by b^2",
        slots=("a", "b", "q"),
        variants={"literal": Sides(_p3_lhs, _p3_rhs, _p3_series)},
        base_nome_usage=("(q)", "(q^2)"), elliptic=False, nome_slot=None,
        notes=("the factor (aq/b; q^2)_k appears above and below the line and cancels",),
    ),
)


# -- links between the specials and the elliptic parent --------------------------


def t3_params_from_p1(v) -> dict:
    """T3 parameters whose p = 0 case is P1 at ``v``."""
    a, b, c, d = v.a, v.b, v.c, v.d
    return {"a": a, "b": a * a / b, "c": a**3 * v.q / (b * c * d), "d": d, "q": v.q}


def p1_params_for_p2(a, beta, gamma) -> tuple[dict, dict]:
    """P1 slot values (c, d = +-aq/beta) and the P2 parameters they reproduce."""
    q = gamma**2
    p1 = {"a": a, "beta": beta, "gamma": gamma, "c": a * q / beta, "d": -a * q / beta}
    p2 = {"a": -a, "b": -a / beta**2, "q": q}
    return p1, p2


def p1_params_for_p3(a, b, q) -> tuple[dict, dict]:
    """P1 slot values (beta = b, gamma = q) that reduce to P3 at ``(a, b, q)``."""
    p1 = {"a": a, "beta": b, "gamma": q, "c": -a * q * q / b, "d": a * q / b}
    return p1, {"a": a, "b": b, "q": q}


def p1_reduced(v, n, K) -> mpc:
    """P1's left side divided by its right-hand prefactor (the 5phi4 value)."""
    return _p1_lhs(v, n, K) / p1_prefactor(v, n, K)


def p1_namespace(params: dict) -> SimpleNamespace:
    return SPECIALS[0].env(params)
