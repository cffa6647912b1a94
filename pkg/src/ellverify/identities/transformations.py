"""Transformation formulas T1-T8.

Each side is a prefactor times a terminating sum.  Left-hand sums are
described by :class:`SeriesForm` so the linter can inspect them; right-hand
sums are forms too, with ``extra`` carrying the index-dependent arguments
of T2 and T7.
"""

from __future__ import annotations

from gmpy2 import mpc

from ..series import WP, Fac, SeriesForm
from .core import IdentitySpec, Sides, geom


def _one(v, n, K):
    return mpc(1)


def _sides(lhs_form, rhs_pre, rhs_form, lhs_pre=_one, note=""):
    def lhs(v, n, K, A=None):
        return lhs_pre(v, n, K) * lhs_form(v, n).total(n, K)

    def rhs(v, n, K, A=None):
        return rhs_pre(v, n, K) * rhs_form(v, n).total(n, K)

    return Sides(lhs, rhs, lhs_form, note)


# T1: from E1 with Warnaar's (q^2, p^2) sum


def _t1_lhs(v, n):
    a, b, c, d, q, p = v.a, v.b, v.c, v.d, v.q, v.p
    qn = q**n
    return SeriesForm(
        q, p,
        num=[Fac(b * qn), Fac(1 / qn), Fac(d), Fac(a * a * q / (b * c * d)), Fac(a * a, 2, 2), Fac(c / q, 2, 2)],
        den=[Fac(a * q / (b * qn)), Fac(a * q * qn), Fac(a * q / d), Fac(b * c * d / a),
             Fac(q * q, 2, 2), Fac(a * a * q**3 / c, 2, 2)],
        wp=[WP(a * a, 4, 2)],
        ratio=q * q,
    )


def _t1_pre(v, n, K):
    a, b, c, d, q, p = v.a, v.b, v.c, v.d, v.q, v.p
    return K.ratio([b * c / a, a * q / (c * d), a * q, b * d / a], [a * q / c, b * c * d / a, b / a, a * q / d], q, p, n)


def _t1_rhs(v, n):
    a, b, c, d, q, p = v.a, v.b, v.c, v.d, v.q, v.p
    qn = q**n
    ac2 = a * a / (c * c)
    return SeriesForm(
        q, p,
        num=[Fac(ac2, 2, 2), Fac(1 / (c * q), 2, 2), Fac(b * qn), Fac(1 / qn), Fac(d), Fac(a * a * q / (b * c * d))],
        den=[Fac(q * q, 2, 2), Fac(a * a * q**3 / c, 2, 2), Fac(a * q / (b * c * qn)), Fac(a * q * qn / c),
             Fac(a * q / (c * d)), Fac(b * d / a)],
        wp=[WP(ac2, 4, 2)],
        ratio=q * q,
    )


# T2: from E1 at a = q with the (q, p^2)/(q^2, p^2) sum; contains a Zhao-Deng sum


def _t2_lhs(v, n):
    a, b, c, d, q, p = v.a, v.b, v.c, v.d, v.q, v.p
    qn = q**n
    return SeriesForm(
        q, p,
        num=[Fac(b * qn), Fac(1 / qn), Fac(c), Fac(d), Fac(a * q * q / (b * c)), Fac(q / d), Fac(a * a, 2, 1)],
        den=[Fac(a * q / (b * qn)), Fac(a * q * qn), Fac(a * q / c), Fac(a * d), Fac(b * c / q), Fac(a * q / d),
             Fac(q * q, 2, 1)],
        wp=[WP(a, 2, 1)],
        ratio=-a,
    )


def _t2_pre(v, n, K):
    a, b, c, q, p = v.a, v.b, v.c, v.q, v.p
    return K.ratio([a * q, b / q, q * q / c, b * c / a], [q * q, b / a, b * c / q, a * q / c], q, p, n)


def _t2_rhs(v, n):
    a, b, c, d, q, p = v.a, v.b, v.c, v.d, v.q, v.p
    qn = q**n
    q2 = q * q

    def shifted(k, K):
        qk = q ** (-k)
        return K.fac(a * d * qk, q2, p, k) / K.dfac(d * qk / a, q2, p, k)

    return SeriesForm(
        q, p,
        num=[Fac(b * qn), Fac(1 / qn), Fac(c), Fac(a * q2 / (b * c)), Fac(d / a)],
        den=[Fac(q2 / (b * qn)), Fac(q2 * qn), Fac(q2 / c), Fac(b * c / a), Fac(a * d)],
        wp=[WP(q, 2, 1)],
        ratio=-q / a,
        extra=shifted,
    )


# T3: from E1 with the Lee-Rains-Warnaar sum


def _t3_lhs(v, n):
    a, b, c, d, q, p = v.a, v.b, v.c, v.d, v.q, v.p
    qn = q**n
    return SeriesForm(
        q, p,
        num=[Fac(a), Fac(c * qn), Fac(1 / qn), Fac(b * q / a), Fac(a * b * q / (c * d)), Fac(d),
             Fac(a * a / b, 1, 2, 2)],
        den=[Fac(q), Fac(a * q / (c * qn)), Fac(a * q * qn), Fac(a * a / b), Fac(c * d / b), Fac(a * q / d),
             Fac(b * q, 1, 2, 2)],
        wp=[WP(a, 2, 1)],
        ratio=q,
    )


def _t3_pre(v, n, K):
    a, b, c, d, q, p = v.a, v.b, v.c, v.d, v.q, v.p
    return K.ratio([c / b, a * q, c * d / a, b * q / d], [b * q, c / a, a * q / d, c * d / b], q, p, n)


def _t3_rhs(v, n):
    a, b, c, d, q, p = v.a, v.b, v.c, v.d, v.q, v.p
    qn = q**n
    return SeriesForm(
        q, p,
        num=[Fac(b * p, 1, 2), Fac(b * b * q / (a * a), 1, 2), Fac(c * qn), Fac(1 / qn),
             Fac(a * b * q / (c * d)), Fac(d)],
        den=[Fac(q, 1, 2), Fac(a * a * p / b, 1, 2), Fac(b * q / (c * qn)), Fac(b * q * qn), Fac(c * d / a),
             Fac(b * q / d)],
        wp=[WP(b * p, 2, 2)],
        ratio=q,
    )


# T4-T6 share the right-hand prefactor coming from E2


def _e2_family_pre(v, n, K):
    a, b, q, p = v.a, v.b, v.q, v.p
    q2, p2 = q * q, p * p
    out = K.th(-b, p) / K.dth(-b * q ** (2 * n), p)
    out *= K.ratio([-q, b / a], [-b, a * q], q, p, n)
    out *= K.fac(a * b * q**3, q2, p2, n) / K.dfac(b / (a * q), q2, p2, n)
    return out * geom(q, -n)


# T4: E2 with the (q^2, p^2)-version of Warnaar's bibasic sum


def _t4_lhs(v, n, *, swapped=False):
    a, b, q, p = v.a, v.b, v.q, v.p
    q2n = q ** (2 * n)
    ab = a * b
    # literal: nome p^4 on the (q^4) factorials; the repair puts them on p^2
    t = 2 if swapped else 4
    return SeriesForm(
        q, p,
        num=[Fac(b * b * q2n, 2, 2), Fac(1 / q2n, 2, 2), Fac(ab * ab * q * q, 4, t), Fac(b / (a * q), 4, t),
             Fac(-a * q, 1, 1, 2)],
        den=[Fac(a * q**3 / (b * q2n), 2, 2), Fac(ab * q**3 * q2n, 2, 2), Fac(q**4, 4, t),
             Fac(a**3 * b * q**7, 4, t), Fac(-b * q, 1, 1, 2)],
        wp=[WP(ab * ab * q * q, 8, t)],
        ratio=a * q**4 / b,
    )


def _t4_rhs(v, n, *, swapped=False):
    a, b, q, p = v.a, v.b, v.q, v.p
    qn = q**n
    a4 = a**4
    t = 2 if swapped else 4
    return SeriesForm(
        q, p,
        num=[Fac(b * qn), Fac(1 / qn), Fac(a4, 4, t), Fac(a / (b * q**3), 4, t)],
        den=[Fac(a * q / (b * qn)), Fac(a * q * qn), Fac(q**4, 4, t), Fac(a**3 * b * q**7, 4, t)],
        wp=[WP(a4, 8, t)],
        ratio=q**4,
    )


# T5: E2 with Warnaar's quadratic sum


def _t5_lhs(v, n):
    a, b, q, p = v.a, v.b, v.q, v.p
    q2n = q ** (2 * n)
    return SeriesForm(
        q, p,
        num=[Fac(b * b * q2n, 2, 2), Fac(1 / q2n, 2, 2), Fac(a * q / b, 2, 2), Fac(a * b * q, 2, 2),
             Fac(-a * q, 1, 1, 2), Fac(b * q, 1, 1, 2)],
        den=[Fac(a * q**3 / (b * q2n), 2, 2), Fac(a * b * q**3 * q2n, 2, 2), Fac(b * b * q * q, 2, 2),
             Fac(q * q, 2, 2), Fac(-b * q, 1, 1, 2), Fac(a * q, 1, 1, 2)],
        wp=[WP(a * b * q, 4, 2)],
        ratio=q * q,
    )


def _t5_rhs(v, n):
    a, b, q, p = v.a, v.b, v.q, v.p
    qn = q**n
    return SeriesForm(
        q, p,
        num=[Fac(-a), Fac(b * qn), Fac(1 / qn), Fac(a / b)],
        den=[Fac(q), Fac(a * q / (b * qn)), Fac(a * q * qn), Fac(-b * q)],
        wp=[WP(-a, 2, 1)],
        ratio=q,
    )


# T6: E2 with the even-order sum at q -> q^2


def _t6_lhs(v, n):
    a, b, q, p = v.a, v.b, v.q, v.p
    q2n = q ** (2 * n)
    return SeriesForm(
        q, p,
        num=[Fac(b * b * q2n, 2, 2), Fac(1 / q2n, 2, 2), Fac(a / (b * q), 2, 2), Fac(a * b * q, 2, 2),
             Fac(-a * q, 1, 1, 2), Fac(b * b * q**4, 4, 2)],
        den=[Fac(a * q**3 / (b * q2n), 2, 2), Fac(a * b * q**3 * q2n, 2, 2), Fac(b * b * q**4, 2, 2),
             Fac(q * q, 2, 2), Fac(-b * q, 1, 1, 2), Fac(a * a * q * q, 4, 2)],
        wp=[WP(a * b * q, 4, 2)],
        ratio=-(q**3),
    )


def _t6_rhs(v, n):
    a, b, q, p = v.a, v.b, v.q, v.p
    qn = q**n
    a2 = a * a
    return SeriesForm(
        q, p,
        num=[Fac(b * qn, 1, 1, 2), Fac(1 / qn, 1, 1, 2), Fac(a2, 4, 2), Fac(a2 / (b * b * q * q), 4, 2)],
        den=[Fac(a * q / (b * qn), 1, 1, 2), Fac(a * q * qn, 1, 1, 2), Fac(q**4, 4, 2), Fac(b * b * q**6, 4, 2)],
        wp=[WP(a2, 8, 2)],
        ratio=q**4,
    )


# T7: E2 at a = q with the (q^2)-version of the (q, p^2)/(q^2, p^2) sum


def _t7_lhs(v, n):
    a, b, q, p = v.a, v.b, v.q, v.p
    q2n = q ** (2 * n)
    return SeriesForm(
        q, p,
        num=[Fac(a * a * q2n / q**4, 2, 2), Fac(1 / q2n, 2, 2), Fac(a * q / b, 2, 2), Fac(b * q / a, 2, 2),
             Fac(-q * q, 1, 1, 2), Fac(a * a, 4, 2)],
        den=[Fac(q**6 / (a * q2n), 2, 2), Fac(a * q * q * q2n, 2, 2), Fac(b * q, 2, 2), Fac(a * a * q / b, 2, 2),
             Fac(-a / q, 1, 1, 2), Fac(q**4, 4, 2)],
        wp=[WP(a, 4, 2)],
        ratio=-(q**3),
    )


def _t7_pre(v, n, K):
    a, q, p = v.a, v.q, v.p
    q2, p2 = q * q, p * p
    out = K.th(-a / q2, p) / K.dth(-a * q ** (2 * n - 2), p)
    out *= K.ratio([-q, a / q**3], [-a / q2, q2], q, p, n)
    out *= K.fac(a * q2, q2, p2, n) / K.dfac(a / q**4, q2, p2, n)
    return out * geom(q, -n)


def _t7_rhs(v, n):
    a, b, q, p = v.a, v.b, v.q, v.p
    qn = q**n
    q4, p2 = q**4, p * p

    def shifted(k, K):
        x = b * q ** (1 - 2 * k)
        return K.fac(x, q4, p2, k) / K.dfac(x / (a * a), q4, p2, k)

    return SeriesForm(
        q, p,
        num=[Fac(a * qn / (q * q)), Fac(1 / qn), Fac(b * q / (a * a), 2, 2)],
        den=[Fac(q**4 / (a * qn)), Fac(q * q * qn), Fac(b * q, 2, 2)],
        wp=[WP(q * q, 4, 2)],
        ratio=-q * q / a,
        extra=shifted,
    )


# T8: E2 at c = b/aq with the (q^2, p^2)-version of the Lee-Rains-Warnaar sum


def _t8_lhs(v, n):
    a, b, q, p = v.a, v.b, v.q, v.p
    q2n = q ** (2 * n)
    b2 = b * b
    return SeriesForm(
        q, p,
        num=[Fac(a, 2, 2), Fac(a * a * q2n / (b2 * q * q), 2, 2), Fac(1 / q2n, 2, 2), Fac(b2 * q * q / a, 2, 2),
             Fac(a * a / b2, 2, 4, 2), Fac(-b * q, 1, 1, 2)],
        den=[Fac(q * q, 2, 2), Fac(b2 * q**4 / (a * q2n), 2, 2), Fac(a * q * q * q2n, 2, 2), Fac(a * a / b2, 2, 2),
             Fac(b2 * q * q, 2, 4, 2), Fac(-a / b, 1, 1, 2)],
        wp=[WP(a, 4, 2)],
        ratio=b2 * q**3 / a,
    )


def _t8_pre(v, n, K):
    a, b, q, p = v.a, v.b, v.q, v.p
    q2, p2 = q * q, p * p
    out = K.th(-a / (b * q), p) / K.dth(-a * q ** (2 * n - 1) / b, p)
    out *= K.ratio([-q, a / (b * b * q)], [-a / (b * q), b * q], q, p, n)
    out *= K.fac(a * q2, q2, p2, n) / K.dfac(a / (b * b * q2), q2, p2, n)
    return out * geom(q, -n)


def _t8_rhs(v, n):
    a, b, q, p = v.a, v.b, v.q, v.p
    qn = q**n
    b2, p2 = b * b, p * p
    return SeriesForm(
        q, p,
        num=[Fac(a * qn / (b * q)), Fac(1 / qn), Fac(b2 * p2, 2, 4), Fac(b2 * b2 * q * q / (a * a), 2, 4)],
        den=[Fac(b2 * q * q / (a * qn)), Fac(b * q * qn), Fac(q * q, 2, 4), Fac(a * a * p2 / b2, 2, 4)],
        wp=[WP(b2 * p2, 4, 4)],
        ratio=q * q,
    )


def _t4_swapped_lhs(v, n):
    return _t4_lhs(v, n, swapped=True)


def _t4_swapped_rhs(v, n):
    return _t4_rhs(v, n, swapped=True)


# T4 with its (q^4) factorials moved from nome p^4 to p^2.  Kept outside the
# registry: the literal form validates and this one does not.
T4_NOME_SWAP = _sides(_t4_swapped_lhs, _e2_family_pre, _t4_swapped_rhs)

_SLOTS4 = ("a", "b", "c", "d", "q", "p")
_SLOTS2 = ("a", "b", "q", "p")

TRANSFORMATIONS = (
    IdentitySpec(
        id="T1", title="Bibasic transformation from the first expansion and Warnaar's sum",
        kind="transformation", label="tr-1", anchor="This yields the transformation formula",
        slots=_SLOTS4, variants={"literal": _sides(_t1_lhs, _t1_pre, _t1_rhs)},
        base_nome_usage=("(q,p)", "(q^2,p^2)"),
    ),
    IdentitySpec(
        id="T2", title="Transformation containing a Zhao-Deng summation",
        kind="transformation", label="tr-4", anchor="we obtain the following transformation formula",
        slots=_SLOTS4, variants={"literal": _sides(_t2_lhs, _t2_pre, _t2_rhs)},
        base_nome_usage=("(q,p)", "(q^2,p)"),
    ),
    IdentitySpec(
        id="T3", title="Transformation from the first expansion and the Lee-Rains-Warnaar sum",
        kind="transformation", label="tr-5", anchor="obtain the transformation formula:",
        slots=_SLOTS4, variants={"literal": _sides(_t3_lhs, _t3_pre, _t3_rhs)},
        base_nome_usage=("(q,p)", "(q,p^2)"),
    ),
    IdentitySpec(
        id="T4", title="Transformation with (q^4, p^4) factors",
        kind="transformation", label="exp2-tr2", anchor="and obtain the transformation formula",
        slots=_SLOTS2,
        variants={"literal": _sides(_t4_lhs, _e2_family_pre, _t4_rhs)},
        base_nome_usage=("(q,p)", "(q^2,p^2)", "(q^4,p^4)"),
    ),
    IdentitySpec(
        id="T5", title="Transformation from the second expansion and Warnaar's quadratic sum",
        kind="transformation", label="exp2-tr3", anchor="is obtained by applying",
        slots=_SLOTS2, variants={"literal": _sides(_t5_lhs, _e2_family_pre, _t5_rhs)},
        base_nome_usage=("(q,p)", "(q^2,p^2)"),
    ),
    IdentitySpec(
        id="T6", title="Transformation with (q^4, p^2) factors",
        kind="transformation", label="exp2-tr4", anchor="relabel parameters, to obtain the transformation formula",
        slots=_SLOTS2, variants={"literal": _sides(_t6_lhs, _e2_family_pre, _t6_rhs)},
        base_nome_usage=("(q,p)", "(q^2,p^2)", "(q^4,p^2)"),
    ),
    IdentitySpec(
        id="T7", title="Transformation with index-shifted (q^4, p^2) factors",
        kind="transformation", label="exp2-tr5", anchor="and relabel parameters, to obtain",
        slots=_SLOTS2, variants={"literal": _sides(_t7_lhs, _t7_pre, _t7_rhs)},
        base_nome_usage=("(q,p)", "(q^2,p^2)", "(q^4,p^2)"),
    ),
    IdentitySpec(
        id="T8", title="Transformation with (q^2, p^4) factors",
        kind="transformation", label="exp2-tr6", anchor="interchange a and b, to obtain",
        slots=_SLOTS2, variants={"literal": _sides(_t8_lhs, _t8_pre, _t8_rhs)},
        base_nome_usage=("(q,p)", "(q^2,p^2)", "(q^2,p^4)"),
    ),
)
