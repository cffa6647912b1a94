import dataclasses
import random
from types import SimpleNamespace

import pytest
from gmpy2 import mpc

from ellverify.expansions import (
    E3,
    E4,
    EXPANSIONS_BY_ID,
    SequenceInput,
    e1_via_lemma,
    expansion_side,
    lemma_lhs,
    lemma_rhs,
    m_factor_defect,
)
from ellverify.identities.core import ArityError
from ellverify.matrices import from_rows, random_triangular
from ellverify.numerics import DEFAULT_CONTEXT, EvaluationError, rel_error
from ellverify.registry import eval_side
from ellverify.suites import lemma_instance

PARAMS = dict(a=0.7 + 0.2j, b=1.3 - 0.5j, c=0.6 + 0.9j, d=-1.1 + 0.3j, q=0.95 + 0.2j, p=0.12 + 0.05j)
SEQ = [complex(0.5, 0.1 * j) for j in range(8)]


def _params(id):
    return PARAMS if id == "E1" else {k: PARAMS[k] for k in "acqp"}


def test_sequence_input_bounds():
    s = SequenceInput([1, 2, 3])
    assert s(2) == 3
    with pytest.raises(IndexError):
        s(3)
    f = SequenceInput(lambda j: j * j, 4)
    assert f(4) == 16
    with pytest.raises(IndexError):
        f(5)


def test_random_sequence_moduli():
    s = SequenceInput.random(random.Random(3), 20)
    assert all(0.25 <= abs(complex(s(j))) <= 1.0 for j in range(21))


def test_lemma_on_random_pairs(ctx):
    rng = random.Random(11)
    for _ in range(5):
        F, G, H, alpha = lemma_instance(rng, 7, ctx)
        for n in range(7):
            assert rel_error(lemma_lhs(H, alpha, n, ctx), lemma_rhs(F, G, H, alpha, n, ctx)) < 1e-25


def test_lemma_negative_order(ctx):
    F, G, H, alpha = lemma_instance(random.Random(1), 3, ctx)
    with pytest.raises(ValueError):
        lemma_lhs(H, alpha, -1, ctx)
    with pytest.raises(ValueError):
        lemma_rhs(F, G, H, alpha, -1, ctx)


def test_lemma_rejects_non_inverse_pair(ctx):
    rng = random.Random(5)
    F = from_rows(random_triangular(4, rng, ctx), ctx)
    G = from_rows(random_triangular(4, rng, ctx), ctx)
    H = from_rows(random_triangular(4, rng, ctx), ctx)
    with pytest.raises(EvaluationError):
        lemma_rhs(F, G, H, [1, 1, 1, 1], 3, ctx, check_inverse=True)


@pytest.mark.parametrize("id", sorted(EXPANSIONS_BY_ID))
def test_sides_agree(id):
    for n in range(5):
        lhs = expansion_side(id, _params(id), SEQ, n, "lhs")
        rhs = expansion_side(id, _params(id), SEQ, n, "rhs")
        assert rel_error(lhs, rhs) < 1e-30


@pytest.mark.parametrize("id", sorted(EXPANSIONS_BY_ID))
def test_sides_depend_on_sequence(id):
    other = [a * (1 + 0.1j) ** j for j, a in enumerate(SEQ)]
    assert rel_error(expansion_side(id, _params(id), SEQ, 3, "lhs"),
                     expansion_side(id, _params(id), other, 3, "lhs")) > 1e-6


FROZEN = {
    "E1": "(938.4377997053019870110416041616850638465427383706275488086978317054501288271371"
          " 481.9327351723289090780711721989100864632280502072663418608720014413730907838279)",
    "E2": "(0.0002532218665447157920136087749805017096209972694650009740906161382778587308621194"
          " -0.01754078140166871655732627376248240250315515828765828779667038371590804080968656)",
    "E3": "(0.02315591504529778772309388955051436648087117797145770780894146672498968752197777"
          " -0.0176319229840659198138838466021654741646780206124217083289553425034820047886397)",
    "E4": "(0.007318039110602514789890092598136038208264129056308631093535145725409410279286116"
          " 0.01201971236131434483068916167032020567777567708089108782579589784748433137011721)",
}


@pytest.mark.parametrize("id", sorted(FROZEN))
def test_frozen_values(id):
    got = expansion_side(id, _params(id), SEQ[:6], 4, "lhs")
    assert rel_error(got, mpc(FROZEN[id], 256)) < 1e-70


def test_e1_via_lemma(ctx):
    A = SequenceInput(SEQ)
    for n in range(5):
        lhs, rhs = e1_via_lemma(PARAMS, A, n, ctx)
        assert rel_error(lhs, rhs) < 1e-30
        assert rel_error(lhs, expansion_side("E1", PARAMS, A, n, "lhs", ctx)) < 1e-30
        assert rel_error(rhs, expansion_side("E1", PARAMS, A, n, "rhs", ctx)) < 1e-30


def _env(**kw):
    with DEFAULT_CONTEXT.activate():
        return SimpleNamespace(**{k: mpc(v) for k, v in kw.items()})


@pytest.mark.parametrize("id", sorted(EXPANSIONS_BY_ID))
def test_summands_are_m_entries(id):
    v = _env(a=0.7 + 0.3j, b=1.2 - 0.4j, c=1.4 - 0.2j, d=-0.9 + 0.5j, q=0.95 + 0.2j, p=0.12)
    exp = EXPANSIONS_BY_ID[id]
    assert m_factor_defect(exp, "lhs", v, 5) < 1e-30
    assert m_factor_defect(exp, "rhs", v, 5) < 1e-30


def test_e3_unshifted_m_arguments_do_not_factor():
    v = _env(a=0.7 + 0.3j, c=1.4 - 0.2j, q=0.95 + 0.2j, p=0.12)
    lit = dataclasses.replace(
        E3,
        lhs_m=lambda v: (v.c, v.c**2 / v.a**2, v.q**2, v.p**2),
        inner_m=lambda v: (v.a, v.c / v.a, v.q, v.p),
    )
    assert m_factor_defect(lit, "lhs", v, 5) > 0.1
    assert m_factor_defect(lit, "rhs", v, 5) > 0.1


def test_e4_inner_m_arguments():
    v = _env(a=0.7 + 0.3j, c=1.4 - 0.2j, q=0.95 + 0.2j, p=0.12)
    with DEFAULT_CONTEXT.activate():
        assert E4.inner_m(v) == (v.a * v.p, v.c**2 * v.p / (v.a * v.q), v.q, v.p**2)
    assert m_factor_defect(E4, "rhs", v, 5) < 1e-30


def test_sequence_is_required():
    with pytest.raises(ArityError):
        eval_side("E2", _params("E2"), 2, "lhs")
    with pytest.raises(ArityError):
        eval_side("S1", PARAMS, 2, "lhs", sequence=SEQ)
