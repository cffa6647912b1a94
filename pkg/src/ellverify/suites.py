"""Property suites behind the CLI commands other than verify.

Each suite returns a :class:`SuiteResult` whose verdict follows the same
PASS / FAIL / INCONCLUSIVE convention as identity verification.
"""

from __future__ import annotations

import cmath
import json
from dataclasses import asdict, dataclass, field

from gmpy2 import mpc

from . import registry
from .expansions import EXPANSIONS_BY_ID, SequenceInput, e1_via_lemma, expansion_side, lemma_lhs, lemma_rhs, m_factor_defect
from .matrices import (
    bressoud_B,
    bressoud_B_inv,
    diagonal_cross_ratio_defect,
    forward_inverse,
    from_rows,
    inverse_residual,
    random_triangular,
    warnaar_F,
    warnaar_G,
)
from .numerics import DEFAULT_CONTEXT, DomainError, NumericContext, rel_error
from .series import lint_form, perturb_factor
from .verifier import FAIL, INCONCLUSIVE, PASS, SampleConfig, aggregate_verdict, trial_rng

# |q| band for the matrix suites: far from the unit circle the entries of F
# and G grow like |q|^(k^2) and absolute residuals lose digits
MATRIX_Q_BAND = (0.8, 1.25)


@dataclass
class Check:
    name: str
    verdict: str
    metric: float
    detail: str = ""


@dataclass
class SuiteResult:
    suite: str
    checks: list = field(default_factory=list)

    @property
    def verdict(self) -> str:
        return aggregate_verdict(c.verdict for c in self.checks)

    def lines(self) -> list[str]:
        return [f"{c.name:<28} {c.verdict:<12} {c.metric:.3e}  {c.detail}".rstrip() for c in self.checks]

    def document(self) -> str:
        doc = {"suite": self.suite, "verdict": self.verdict, "checks": [asdict(c) for c in self.checks]}
        return json.dumps(doc, indent=2) + "\n"


def _polar(rng, band) -> complex:
    return cmath.rect(rng.uniform(*band), rng.uniform(0.0, 2 * cmath.pi))


def _verdict(ok: bool) -> str:
    return PASS if ok else FAIL


# -- matrices ------------------------------------------------------------------


def _pair_check(name, make, N, cfg, ctx, draws) -> Check:
    worst = 0.0
    rejected = 0
    done = 0
    t = 0
    while done < draws:
        if rejected > cfg.max_resamples:
            return Check(name, INCONCLUSIVE, worst, f"{done}/{draws} admissible draws")
        rng = trial_rng(cfg.seed, name, t)
        t += 1
        a, b = _polar(rng, cfg.modulus_band), _polar(rng, cfg.modulus_band)
        q, p = _polar(rng, MATRIX_Q_BAND), _polar(rng, cfg.nome_band)
        try:
            X, Y = make(a, b, q, p, ctx)
            res = float(inverse_residual(X, Y, N, ctx))
        except (DomainError, ZeroDivisionError):
            rejected += 1
            continue
        if min(X.min_denominator, Y.min_denominator) < ctx.pole_delta:
            rejected += 1
            continue
        worst = max(worst, res)
        done += 1
    return Check(name, _verdict(worst < ctx.rel_tolerance), worst, f"N={N}, {draws} draws, {rejected} rejected")


def check_matrices(
    cfg: SampleConfig = SampleConfig(), ctx: NumericContext = DEFAULT_CONTEXT, draws: int = 50
) -> SuiteResult:
    """Inverse residuals of Warnaar's and Bressoud's pairs, and the M/B cross-ratio test."""
    out = SuiteResult("check-matrices")
    out.checks.append(_pair_check(
        "warnaar F.G", lambda a, b, q, p, c: (warnaar_F(a, b, q, p, c), warnaar_G(a, b, q, p, c)), 12, cfg, ctx, draws))
    out.checks.append(_pair_check(
        "bressoud B.Binv", lambda a, b, q, p, c: (bressoud_B(a, b, q, p, c), bressoud_B_inv(a, b, q, p, c)),
        10, cfg, ctx, draws))
    worst = 0.0
    for t in range(10):
        rng = trial_rng(cfg.seed, "cross-ratio", t)
        a, b = _polar(rng, cfg.modulus_band), _polar(rng, cfg.modulus_band)
        q, p = _polar(rng, MATRIX_Q_BAND), _polar(rng, cfg.nome_band)
        worst = max(worst, float(diagonal_cross_ratio_defect(a, b, q, p, 9, ctx)))
    out.checks.append(Check("M(b,a) ~ B(a,b)", _verdict(worst < ctx.rel_tolerance), worst, "cross ratios, N=9"))
    return out


# -- lemma -----------------------------------------------------------------------

LEMMA_TOLERANCE = 1e-25


def lemma_instance(rng, size: int, ctx: NumericContext):
    F = random_triangular(size, rng, ctx)
    G = forward_inverse(F, ctx)
    H = random_triangular(size, rng, ctx)
    alpha = SequenceInput.random(rng, size - 1)
    return from_rows(F, ctx, "F"), from_rows(G, ctx, "G"), from_rows(H, ctx, "H"), alpha


def check_lemma(
    cfg: SampleConfig = SampleConfig(), ctx: NumericContext = DEFAULT_CONTEXT, instances: int = 100, n_max: int = 8
) -> SuiteResult:
    """The inverse-pair lemma on random triangular pairs, plus E1 rebuilt from it."""
    out = SuiteResult("check-lemma")
    worst = 0.0
    with ctx.activate():
        for t in range(instances):
            rng = trial_rng(cfg.seed, "lemma", t)
            F, G, H, alpha = lemma_instance(rng, n_max + 1, ctx)
            for n in range(n_max + 1):
                worst = max(worst, float(rel_error(lemma_lhs(H, alpha, n, ctx), lemma_rhs(F, G, H, alpha, n, ctx))))
    out.checks.append(Check("random triangular pairs", _verdict(worst < LEMMA_TOLERANCE), worst,
                            f"{instances} instances, n<={n_max}"))

    worst = 0.0
    draws = 10
    for t in range(draws):
        rng = trial_rng(cfg.seed, "lemma-E1", t)
        params = {s: _polar(rng, cfg.modulus_band) for s in ("a", "b", "c", "d")}
        params["q"] = _polar(rng, MATRIX_Q_BAND)
        params["p"] = _polar(rng, cfg.nome_band)
        A = SequenceInput.random(rng, 6)
        for n in range(7):
            lhs, rhs = e1_via_lemma(params, A, n, ctx)
            shown_lhs = expansion_side("E1", params, A, n, "lhs", ctx)
            shown_rhs = expansion_side("E1", params, A, n, "rhs", ctx)
            worst = max(worst, float(rel_error(lhs, shown_lhs)), float(rel_error(rhs, shown_rhs)))
    out.checks.append(Check("E1 via the lemma", _verdict(worst < ctx.rel_tolerance), worst, f"{draws} draws, n<=6"))
    return out


# -- M factors in the expansions ---------------------------------------------------


def check_m_factors(cfg: SampleConfig = SampleConfig(), ctx: NumericContext = DEFAULT_CONTEXT, N: int = 6) -> SuiteResult:
    """The summands of E1-E4 are M entries up to factors in n and j alone."""
    out = SuiteResult("m-factors")
    for id, exp in EXPANSIONS_BY_ID.items():
        rng = trial_rng(cfg.seed, f"m-{id}", 0)
        spec = registry.get(id)
        with ctx.activate():
            params = {s: mpc(_polar(rng, cfg.nome_band if s == "p" else cfg.modulus_band)) for s in spec.slots}
            v = spec.env(params)
            worst = max(m_factor_defect(exp, "lhs", v, N, ctx), m_factor_defect(exp, "rhs", v, N, ctx))
        out.checks.append(Check(f"{id} M entries", _verdict(worst < ctx.rel_tolerance), worst))
    return out


# -- linter ------------------------------------------------------------------------


def lint_all(cfg: SampleConfig = SampleConfig(), ctx: NumericContext = DEFAULT_CONTEXT, n: int = 4) -> SuiteResult:
    """Balancing and ellipticity of every elliptic primary sum, plus a planted defect.

    An identity passes when the variant that verification would settle on
    (the correction, if one is registered) is balanced, and when multiplying
    one factorial argument by 1.01 is flagged.
    """
    out = SuiteResult("lint")
    for spec in registry.REGISTRY.values():
        if not spec.elliptic:
            continue
        forms = {k: s.series for k, s in spec.variants.items() if s.series is not None}
        if not forms:
            continue
        rng = trial_rng(cfg.seed, f"lint-{spec.id}", 0)
        with ctx.activate():
            params = {s: mpc(_polar(rng, cfg.nome_band if s == spec.nome_slot else cfg.modulus_band))
                      for s in spec.slots}
            v = spec.env(params)
            results = {k: lint_form(f(v, n), ctx) for k, f in forms.items()}
            preferred = "corrected" if "corrected" in results else "literal"
            planted = lint_form(perturb_factor(forms[preferred](v, n)), ctx)
        r = results[preferred]
        ok = r.ok and r.max_deviation < ctx.rel_tolerance and not planted.ok
        notes = ", ".join(f"{k}: {'balanced' if x.ok else 'UNBALANCED'}" for k, x in results.items())
        out.checks.append(Check(f"{spec.id} lint", _verdict(ok), r.max_deviation,
                                f"{notes}; nome p^{r.nome_power}; planted defect {'missed' if planted.ok else 'flagged'}"))
    return out


# -- p -> 0 limits -----------------------------------------------------------------

P_SMALL = (1e-4, 1e-6, 1e-8)


def limit_check(
    cfg: SampleConfig = SampleConfig(), ctx: NumericContext = DEFAULT_CONTEXT, draws: int = 3, n: int = 3
) -> SuiteResult:
    """Deviation from T3 must shrink by 10^2 (within a factor 10) per 10^-2 step in p."""
    out = SuiteResult("limit-check")
    for id in ("P1", "P2", "P3"):
        spec = registry.get(id)
        worst_ratio = 1.0
        devs = []
        for t in range(draws):
            rng = trial_rng(cfg.seed, f"limit-{id}", t)
            params = {s: _polar(rng, cfg.modulus_band) for s in spec.slots}
            devs = [registry.limit_consistency(id, params, n, ps, ctx) for ps in P_SMALL]
            for hi, lo in zip(devs, devs[1:]):
                ratio = (hi / lo) / 100 if lo else float("inf")
                worst_ratio = max(worst_ratio, ratio, 1 / ratio if ratio else float("inf"))
        detail = "deviations " + ", ".join(f"{d:.2e}" for d in devs)
        out.checks.append(Check(f"{id} vs T3", _verdict(worst_ratio < 10), worst_ratio, detail))
    return out
