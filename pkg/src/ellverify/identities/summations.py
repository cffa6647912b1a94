"""The six terminating summation theorems (S1-S6)."""

from __future__ import annotations

from gmpy2 import mpc

from ..series import WP, Fac, SeriesForm
from .core import IdentitySpec, Sides, geom


# S1: terminating balanced very-well-poised 10V9 (Frenkel-Turaev)


def _s1_series(v, n, *, literal):
    a, b, c, d, q, p = v.a, v.b, v.c, v.d, v.q, v.p
    lam = a * a * q ** (n + 1) / (b * c * d)
    fifth = b * c * d * q ** (-n) / (c if literal else a)
    return SeriesForm(
        q, p,
        num=[Fac(a), Fac(b), Fac(c), Fac(d), Fac(lam), Fac(q ** (-n))],
        den=[Fac(q), Fac(a * q / b), Fac(a * q / c), Fac(a * q / d), Fac(fifth), Fac(a * q ** (n + 1))],
        wp=[WP(a, 2, 1)],
        ratio=q,
    )


def _s1_rhs(v, n, K, A=None):
    a, b, c, d, q, p = v.a, v.b, v.c, v.d, v.q, v.p
    aq = a * q
    return K.ratio([aq, aq / (b * c), aq / (b * d), aq / (c * d)],
                   [aq / b, aq / c, aq / d, aq / (b * c * d)], q, p, n)


def _s1_literal_series(v, n):
    return _s1_series(v, n, literal=True)


def _s1_corrected_series(v, n):
    return _s1_series(v, n, literal=False)


# S2: Warnaar's bibasic sum with (q^2, p^2) and (q, p) factors


def _s2_series(v, n):
    a, b, q, p = v.a, v.b, v.q, v.p
    a2 = a * a
    return SeriesForm(
        q, p,
        num=[Fac(a2, 2, 2), Fac(b / q, 2, 2), Fac(a * q**n / b), Fac(q ** (-n))],
        den=[Fac(q * q, 2, 2), Fac(a2 * q**3 / b, 2, 2), Fac(b * q ** (1 - n)), Fac(a * q ** (1 + n))],
        wp=[WP(a2, 4, 2)],
        ratio=q * q,
    )


def _s2_rhs(v, n, K, A=None):
    a, b, q, p = v.a, v.b, v.q, v.p
    q2, p2 = q * q, p * p
    out = K.th(-a * q ** (2 * n) / b, p) / K.dth(-a / b, p)
    out *= K.fac(1 / (b * q), q2, p2, n) / K.dfac(a * a * q**3 / b, q2, p2, n)
    out *= K.ratio([-a / b, a * q], [-q, 1 / b], q, p, n)
    return out * geom(q, n)


# S3: Warnaar's sum with (q, p)_{2j} factors


def _s3_series(v, n):
    a, b, q, p = v.a, v.b, v.q, v.p
    ab = a * b
    return SeriesForm(
        q, p,
        num=[Fac(ab, 2, 2), Fac(a * q * q / b, 2, 2), Fac(a * a * q ** (2 * n), 2, 2),
             Fac(q ** (-2 * n), 2, 2), Fac(b, 1, 1, 2)],
        den=[Fac(q * q, 2, 2), Fac(b * b, 2, 2), Fac(b * q ** (2 - 2 * n) / a, 2, 2),
             Fac(ab * q ** (2 + 2 * n), 2, 2), Fac(a * q, 1, 1, 2)],
        wp=[WP(ab, 4, 2)],
        ratio=b * q / a,
    )


def _s3_rhs(v, n, K, A=None):
    a, b, q, p = v.a, v.b, v.q, v.p
    q2, p2 = q * q, p * p
    out = K.th(a, p) / K.dth(a * q ** (2 * n), p)
    out *= K.fac(a * b * q2, q2, p2, n) / K.dfac(a / b, q2, p2, n)
    out *= K.ratio([-q, a * q / b], [a, -b], q, p, n)
    return out * geom(q, -n)


# S4: Lee-Rains-Warnaar sum, nome p^2 in the (q, p^2)_{2j} factors


def _s4_series(v, n):
    a, b, q, p = v.a, v.b, v.q, v.p
    return SeriesForm(
        q, p,
        num=[Fac(b), Fac(q ** (-n)), Fac(a * q**n), Fac(a * q / b), Fac(b * b / a, 1, 2, 2)],
        den=[Fac(q), Fac(b * q ** (n + 1)), Fac(b * q ** (1 - n) / a), Fac(b * b / a), Fac(a * q, 1, 2, 2)],
        wp=[WP(b, 2, 1)],
        ratio=q,
    )


def _s4_rhs(v, n, K, A=None):
    a, b, q, p = v.a, v.b, v.q, v.p
    p2 = p * p
    out = K.th(a, p2) / K.dth(a * q ** (2 * n), p2)
    out *= K.fac(b * q, q, p, n) / K.dfac(a / b, q, p, n)
    out *= K.ratio([p * q, a * a * q / (b * b)], [a, b * b * p / a], q, p2, n)
    return out


# S5: Warnaar's sum that vanishes for odd order


def _s5_series(v, n):
    a, b, q, p = v.a, v.b, v.q, v.p
    ab = a * b
    return SeriesForm(
        q, p,
        num=[Fac(ab, 1, 2), Fac(a * q / b, 1, 2), Fac(a * a * q ** (n + 1), 1, 2),
             Fac(q ** (-n), 1, 2), Fac(b * b, 2, 2)],
        den=[Fac(q, 1, 2), Fac(b * b, 1, 2), Fac(b * q ** (-n) / a, 1, 2),
             Fac(ab * q ** (n + 1), 1, 2), Fac(a * a * q * q, 2, 2)],
        wp=[WP(ab, 2, 2)],
        ratio=-b / a,
    )


def _s5_rhs(v, n, K, A=None):
    if n % 2:
        return mpc(0)
    a, b, q, p = v.a, v.b, v.q, v.p
    q2, p2 = q * q, p * p
    h = n // 2
    out = K.fac(a * b * q, q, p2, n) / K.dfac(a * q / b, q, p2, n)
    out *= K.ratio([q, a * a * q2 / (b * b)], [a * a * q2, b * b * q], q2, p2, h)
    return out


# S6: Warnaar's sum stated without V-notation


def _s6_series(v, n):
    b, c, q, p = v.b, v.c, v.q, v.p
    return SeriesForm(
        q, p,
        num=[Fac(b * b, 2, 2), Fac(c / b, 1, 2), Fac(b * q / c, 1, 2),
             Fac(q ** (n + 1), 1, 2), Fac(q ** (-n), 1, 2)],
        den=[Fac(q * q, 2, 2), Fac(b * b * q / c, 1, 2), Fac(c, 1, 2),
             Fac(b * q ** (n + 1), 1, 2), Fac(b * q ** (-n), 1, 2)],
        wp=[WP(b, 2, 2)],
        ratio=-b,
    )


def _s6_rhs(v, n, K, A=None):
    b, c, q, p = v.b, v.c, v.q, v.p
    q2, p2 = q * q, p * p
    out = K.ratio([b * q, c / (b * b)], [q / b, c], q, p2, n)
    out *= K.fac(c * q ** (-n), q2, p2, n) / K.dfac(c * q ** (-n) / (b * b), q2, p2, n)
    return out * geom(-1 / b, n)


def _lhs_of(series):
    def lhs(v, n, K, A=None):
        return series(v, n).total(n, K)

    return lhs


SUMMATIONS = (
    IdentitySpec(
        id="S1",
        title="Frenkel-Turaev 10V9 summation",
        kind="summation",
        label="10V9",
        anchor="due to Frenkel and Turaev",
        slots=("a", "b", "c", "d", "q", "p"),
        variants={
            "literal": Sides(_lhs_of(_s1_literal_series), _s1_rhs, _s1_literal_series,
                             note="fifth denominator parameter bcdq^-n/c (literal)"),
            "corrected": Sides(_lhs_of(_s1_corrected_series), _s1_rhs, _s1_corrected_series,
                               note="fifth denominator parameter bcdq^-n/a (balanced)"),
        },
        base_nome_usage=("(q,p)",),
    ),
    IdentitySpec(
        id="S2",
        title="Warnaar bibasic summation (q^2,p^2)/(q,p)",
        kind="summation",
        label="SOW1.3",
        anchor="requires Warnaar's summation",
        slots=("a", "b", "q", "p"),
        variants={"literal": Sides(_lhs_of(_s2_series), _s2_rhs, _s2_series)},
        base_nome_usage=("(q,p)", "(q^2,p^2)"),
    ),
    IdentitySpec(
        id="S3",
        title="Warnaar quadratic summation",
        kind="summation",
        label="SOW1.4",
        anchor="Warnaar's summation formula",
        slots=("a", "b", "q", "p"),
        variants={"literal": Sides(_lhs_of(_s3_series), _s3_rhs, _s3_series)},
        base_nome_usage=("(q,p)", "(q^2,p^2)"),
    ),
    IdentitySpec(
        id="S4",
        title="Lee-Rains-Warnaar summation",
        kind="summation",
        label="lrw-1",
        anchor="due to Lee, Rains and Warnaar",
        slots=("a", "b", "q", "p"),
        variants={"literal": Sides(_lhs_of(_s4_series), _s4_rhs, _s4_series)},
        base_nome_usage=("(q,p)", "(q,p^2)"),
    ),
    IdentitySpec(
        id="S5",
        title="Warnaar summation with even-order support",
        kind="summation",
        label="SOW1.10",
        anchor="We use the summation",
        slots=("a", "b", "q", "p"),
        variants={"literal": Sides(_lhs_of(_s5_series), _s5_rhs, _s5_series)},
        base_nome_usage=("(q,p^2)", "(q^2,p^2)"),
    ),
    IdentitySpec(
        id="S6",
        title="Warnaar summation (q,p^2)/(q^2,p^2)",
        kind="summation",
        label="SOW1.15",
        anchor="stated this summation theorem without using",
        slots=("b", "c", "q", "p"),
        variants={"literal": Sides(_lhs_of(_s6_series), _s6_rhs, _s6_series)},
        base_nome_usage=("(q,p^2)", "(q^2,p^2)"),
    ),
)
