"""The identity registry: lookup, side evaluation and the p -> 0 limit checks."""

from __future__ import annotations

from typing import Mapping, Optional

import gmpy2
from gmpy2 import mpc

from .expansions import EXPANSIONS, SequenceInput
from .identities.core import ArityError, IdentitySpec, UnknownIdentity
from .identities.special import (
    SPECIALS,
    p1_namespace,
    p1_params_for_p3,
    t3_params_from_p1,
)
from .identities.summations import SUMMATIONS
from .identities.transformations import TRANSFORMATIONS
from .numerics import DEFAULT_CONTEXT, DomainError, EvaluationError, NumericContext, cval, rel_error
from .theta import Kernel

_ALL: tuple = SUMMATIONS + EXPANSIONS + TRANSFORMATIONS + SPECIALS
REGISTRY: Mapping[str, IdentitySpec] = {s.id: s for s in _ALL}

# largest order exercised by the both-sides checks
DEFAULT_MAX_ORDER = {"summation": 8, "expansion": 6, "transformation": 6, "special-p0": 8}


def list_identities() -> list[tuple[str, str, str, str]]:
    """(id, title, anchor, kind) for every registered identity, in registry order."""
    return [(s.id, s.title, s.anchor, s.kind) for s in _ALL]


def get(id: str) -> IdentitySpec:
    try:
        return REGISTRY[id]
    except KeyError:
        raise UnknownIdentity(id) from None


def ids() -> list[str]:
    return [s.id for s in _ALL]


def resolve_ids(selection) -> list[str]:
    """Expand ids and kind prefixes ("S", "T", ...) into registry ids, keeping order."""
    if not selection:
        return ids()
    out: list[str] = []
    for item in selection:
        if item in REGISTRY:
            picked = [item]
        else:
            picked = [i for i in ids() if i.rstrip("0123456789") == item]
            if not picked:
                raise UnknownIdentity(item)
        out.extend(i for i in picked if i not in out)
    return out


def _check_sequence(spec: IdentitySpec, sequence) -> Optional[SequenceInput]:
    if spec.sequence_slot and sequence is None:
        raise ArityError(f"{spec.id} needs a sequence argument")
    if not spec.sequence_slot and sequence is not None:
        raise ArityError(f"{spec.id} takes no sequence argument")
    if sequence is None or isinstance(sequence, SequenceInput):
        return sequence
    return SequenceInput(sequence)


def prepare(spec: IdentitySpec, params: Mapping, ctx: NumericContext = DEFAULT_CONTEXT):
    """Validated parameter namespace for ``spec``."""
    with ctx.activate():
        values = {k: cval(x) for k, x in params.items()}
        for k, x in values.items():
            if x == 0:
                raise DomainError(f"parameter {k} must be non-zero")
        if spec.elliptic:
            if "p" not in values:
                raise KeyError(f"{spec.id}: missing parameter p")
            if not abs(values["p"]) < 1:
                raise DomainError("the nome must satisfy |p| < 1")
        return spec.env(values)


def eval_side(
    id: str,
    params: Mapping,
    n: int,
    side: str,
    sequence=None,
    ctx: NumericContext = DEFAULT_CONTEXT,
    variant: str = "literal",
) -> mpc:
    """Evaluate one side of a registered identity at order ``n``."""
    spec = get(id)
    seq = _check_sequence(spec, sequence)
    if n < 0:
        raise ValueError("order must be non-negative")
    with ctx.activate():
        v = prepare(spec, params, ctx)
        K = Kernel(ctx)
        out = spec.side(side, variant)(v, n, K, seq)
        if K.min_den == 0 or not gmpy2.is_finite(out):
            raise DomainError(f"{id} {side} at n={n} hits a pole")
        return out


def eval_pair(spec: IdentitySpec, v, n: int, K: Kernel, seq=None, variant: str = "literal") -> tuple[mpc, mpc]:
    """Both sides with a shared kernel; ``K.min_den`` then covers both."""
    lhs = spec.side("lhs", variant)(v, n, K, seq)
    rhs = spec.side("rhs", variant)(v, n, K, seq)
    if not (gmpy2.is_finite(lhs) and gmpy2.is_finite(rhs)):
        raise EvaluationError(f"{spec.id} at n={n} is not finite")
    return lhs, rhs


# -- p -> 0 consistency ------------------------------------------------------------


def _t3_reduced(params: dict, p_small, n: int, K: Kernel) -> tuple[mpc, mpc]:
    """T3's two sums, each divided by T3's right-hand prefactor."""
    from .identities.transformations import _t3_pre

    t3 = get("T3")
    v = t3.env({**params, "p": cval(p_small)})
    lhs, rhs = eval_pair(t3, v, n, K)
    pre = _t3_pre(v, n, K)
    return lhs / pre, rhs / pre


def _p1_from_p2(params: Mapping) -> dict:
    # any branch of the roots works: P1 only sees +-beta and gamma^2, beta*gamma
    a, b, q = (cval(params[k]) for k in ("a", "b", "q"))
    return {"a": -a, "beta": gmpy2.sqrt(a / b), "gamma": gmpy2.sqrt(q), "c": -a * q / gmpy2.sqrt(a / b),
            "d": a * q / gmpy2.sqrt(a / b)}


def limit_consistency(
    id: str, params: Mapping, n: int, p_small, ctx: NumericContext = DEFAULT_CONTEXT
) -> float:
    """Relative deviation between T3 at nome ``p_small`` and the p = 0 identity ``id``.

    P1 is compared side by side with T3.  P2 and P3 are compared with T3
    at the matching P1 parameters, both sums divided by T3's prefactor.
    """
    spec = get(id)
    if spec.kind != "special-p0":
        raise ValueError(f"{id} is not a p = 0 specialisation")
    with ctx.activate():
        K = Kernel(ctx)
        if id == "P1":
            v = prepare(spec, params, ctx)
            lhs0, rhs0 = eval_pair(spec, v, n, K)
            t3 = get("T3")
            w = t3.env({**t3_params_from_p1(v), "p": cval(p_small)})
            lhs1, rhs1 = eval_pair(t3, w, n, K)
            return float(max(rel_error(lhs0, lhs1), rel_error(rhs0, rhs1)))
        v = prepare(spec, params, ctx)
        if id == "P2":
            p1 = _p1_from_p2(params)
        else:
            p1, _ = p1_params_for_p3(v.a, v.b, v.q)
        lhs0, rhs0 = eval_pair(spec, v, n, K)
        reduced_lhs, reduced_rhs = _t3_reduced(t3_params_from_p1(p1_namespace(p1)), p_small, n, K)
        # T3's left sum reduces to the closed form, its right sum to the special's sum
        return float(max(rel_error(reduced_lhs, rhs0), rel_error(reduced_rhs, lhs0)))
