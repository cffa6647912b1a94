"""Random-sampling verification of registered identities.

Every trial gets its own ``random.Random`` seeded from a hash of
``(seed, identity, trial)``, so reports do not depend on execution order or
on how many workers run them.
"""

from __future__ import annotations

import cmath
import csv
import hashlib
import io
import json
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Optional

import gmpy2

from . import registry
from .expansions import SequenceInput
from .identities.core import IdentitySpec
from .numerics import DEFAULT_CONTEXT, DomainError, EllVerifyError, EvaluationError, NumericContext, rel_error
from .theta import Kernel

PASS, FAIL, INCONCLUSIVE = "PASS", "FAIL", "INCONCLUSIVE"


class ResampleExhausted(EllVerifyError):
    pass


@dataclass(frozen=True)
class SampleConfig:
    seed: int = 0
    trials: int = 50
    # inclusive; None means the per-kind default order range
    n_range: Optional[tuple[int, int]] = None
    modulus_band: tuple[float, float] = (0.5, 2.0)
    nome_band: tuple[float, float] = (0.05, 0.3)
    max_resamples: int = 200
    sequence_band: tuple[float, float] = (0.25, 1.0)

    def __post_init__(self) -> None:
        lo, hi = self.nome_band
        if not 0 < lo <= hi < 1:
            raise ValueError(f"nome band must lie in (0, 1), got {self.nome_band}")
        lo, hi = self.modulus_band
        if not 0 < lo <= hi:
            raise ValueError(f"modulus band must lie in (0, inf), got {self.modulus_band}")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if self.max_resamples < 1:
            raise ValueError("max_resamples must be at least 1")
        if self.n_range is not None and not 0 <= self.n_range[0] <= self.n_range[1]:
            raise ValueError(f"bad order range {self.n_range}")

    def orders(self, spec: IdentitySpec) -> range:
        lo, hi = self.n_range or (0, registry.DEFAULT_MAX_ORDER[spec.kind])
        return range(lo, hi + 1)


@dataclass(frozen=True)
class Fault:
    """Multiply one side by ``1 + epsilon`` (detector self-test)."""

    side: str = "rhs"
    epsilon: float = 1e-10


@dataclass
class Draw:
    params: dict
    sequence: Optional[SequenceInput]
    resamples: int
    payload: object = None


@dataclass
class TrialRecord:
    trial: int
    n: int
    params: dict
    abs_lhs: float
    abs_rhs: float
    rel_error: float
    passed: bool
    error: str = ""


@dataclass
class VerificationReport:
    identity_id: str
    config: dict
    trials: list = field(default_factory=list)
    max_rel_error: float = 0.0
    resample_count: int = 0
    verdict: str = PASS
    variant_used: str = "literal"
    # verdict and max_rel_error of every variant that was tried
    variants_tried: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)


def trial_rng(seed: int, identity_id: str, trial: int) -> random.Random:
    digest = hashlib.sha256(f"{seed}:{identity_id}:{trial}".encode()).digest()
    return random.Random(int.from_bytes(digest[:16], "big"))


def _polar(rng: random.Random, band) -> complex:
    return cmath.rect(rng.uniform(*band), rng.uniform(0.0, 2 * cmath.pi))


def _raw_draw(spec: IdentitySpec, rng: random.Random, cfg: SampleConfig, n_max: int):
    params = {s: _polar(rng, cfg.nome_band if s == spec.nome_slot else cfg.modulus_band) for s in spec.slots}
    seq = SequenceInput.random(rng, n_max, *cfg.sequence_band) if spec.sequence_slot else None
    return params, seq


def evaluate_orders(
    spec: IdentitySpec, params: dict, seq, orders, ctx: NumericContext, variant: str = "literal"
):
    """Both sides at every order, or None if the draw sits within pole_delta of a pole."""
    with ctx.activate():
        K = Kernel(ctx)
        try:
            v = registry.prepare(spec, params, ctx)
            values = [registry.eval_pair(spec, v, n, K, seq, variant) for n in orders]
        except (DomainError, EvaluationError, ZeroDivisionError):
            return None
        if K.min_den < ctx.pole_delta:
            return None
        return values


def sample_params(
    spec: IdentitySpec,
    rng: random.Random,
    cfg: SampleConfig,
    ctx: NumericContext = DEFAULT_CONTEXT,
    admissible: Optional[Callable] = None,
    variant: str = "literal",
) -> Draw:
    """Draw slot values, resampling until ``admissible(params, seq)`` is not None.

    The default predicate evaluates both sides over the whole order range
    and rejects draws with a denominator theta below ``pole_delta``; its
    values are returned as ``payload`` so they need not be recomputed.
    """
    orders = cfg.orders(spec)
    if admissible is None:
        def admissible(params, seq):
            return evaluate_orders(spec, params, seq, orders, ctx, variant)

    for attempt in range(cfg.max_resamples + 1):
        params, seq = _raw_draw(spec, rng, cfg, orders[-1])
        payload = admissible(params, seq)
        if payload is not None:
            return Draw(params, seq, attempt, payload)
    raise ResampleExhausted(f"{spec.id}: no admissible draw in {cfg.max_resamples} resamples")


def _fmt_complex(z: complex) -> str:
    return f"{z.real:.17g}{z.imag:+.17g}j"


def _run_variant(
    spec: IdentitySpec, cfg: SampleConfig, ctx: NumericContext, variant: str, fault: Optional[Fault], stop_early: bool
) -> VerificationReport:
    report = VerificationReport(spec.id, _config_echo(cfg, ctx), variant_used=variant)
    tol = ctx.rel_tolerance
    orders = cfg.orders(spec)
    worst = 0.0
    for t in range(cfg.trials):
        rng = trial_rng(cfg.seed, spec.id, t)
        try:
            draw = sample_params(spec, rng, cfg, ctx, variant=variant)
        except ResampleExhausted:
            report.resample_count += cfg.max_resamples
            report.verdict = INCONCLUSIVE
            break
        except Exception as exc:  # recorded, not raised: failures are data
            report.trials.append(TrialRecord(t, -1, {}, math.nan, math.nan, math.inf, False, repr(exc)))
            worst = math.inf
            if stop_early:
                break
            continue
        report.resample_count += draw.resamples
        shown = {k: _fmt_complex(v) for k, v in draw.params.items()}
        failed = False
        with ctx.activate():
            for n, (lhs, rhs) in zip(orders, draw.payload):
                if fault is not None:
                    bump = 1 + gmpy2.mpfr(fault.epsilon)
                    lhs, rhs = (lhs * bump, rhs) if fault.side == "lhs" else (lhs, rhs * bump)
                err = float(rel_error(lhs, rhs))
                ok = err < tol
                failed |= not ok
                worst = max(worst, err)
                report.trials.append(TrialRecord(t, n, shown, float(abs(lhs)), float(abs(rhs)), err, ok))
        if failed and stop_early:
            break
    report.max_rel_error = worst
    if report.verdict != INCONCLUSIVE:
        report.verdict = PASS if all(r.passed for r in report.trials) else FAIL
    elif any(not r.passed for r in report.trials):
        report.verdict = FAIL
    return report


def _config_echo(cfg: SampleConfig, ctx: NumericContext) -> dict:
    return {
        "seed": cfg.seed,
        "trials": cfg.trials,
        "n_range": list(cfg.n_range) if cfg.n_range else None,
        "modulus_band": list(cfg.modulus_band),
        "nome_band": list(cfg.nome_band),
        "max_resamples": cfg.max_resamples,
        "precision_bits": ctx.precision_bits,
        "theta_epsilon": ctx.theta_epsilon,
        "pole_delta": ctx.pole_delta,
        "rel_tolerance": ctx.rel_tolerance,
    }


def verify_identity(
    id: str,
    cfg: SampleConfig = SampleConfig(),
    ctx: NumericContext = DEFAULT_CONTEXT,
    fault: Optional[Fault] = None,
) -> VerificationReport:
    """Run the both-sides check; the literal variant first, then any correction.

    A literal variant that fails while a correction remains is stopped at the
    first failing trial.  If no variant passes, the report of the variant
    with the smallest worst-case error is returned.
    """
    spec = registry.get(id)
    names = ["literal"] + [v for v in spec.variants if v != "literal"]
    reports = []
    for i, name in enumerate(names):
        rep = _run_variant(spec, cfg, ctx, name, fault, stop_early=i + 1 < len(names))
        reports.append(rep)
        if rep.verdict == PASS:
            break
    chosen = next((r for r in reports if r.verdict == PASS), None)
    if chosen is None:
        chosen = min(reports, key=lambda r: r.max_rel_error if r.trials else math.inf)
    chosen.variants_tried = {r.variant_used: {"verdict": r.verdict, "max_rel_error": r.max_rel_error} for r in reports}
    return chosen


def _verify_one(args):
    id, cfg, ctx, fault = args
    return verify_identity(id, cfg, ctx, fault)


@dataclass
class Summary:
    reports: list
    verdict: str

    @property
    def counts(self) -> dict:
        out = {PASS: 0, FAIL: 0, INCONCLUSIVE: 0}
        for r in self.reports:
            out[r.verdict] += 1
        return out


def aggregate_verdict(verdicts) -> str:
    verdicts = list(verdicts)
    if any(v == FAIL for v in verdicts):
        return FAIL
    if any(v == INCONCLUSIVE for v in verdicts):
        return INCONCLUSIVE
    return PASS


def verify_all(
    cfg: SampleConfig = SampleConfig(),
    ctx: NumericContext = DEFAULT_CONTEXT,
    ids=None,
    workers: int = 1,
) -> Summary:
    """verify_identity over the registry (or ``ids``), in registry order."""
    chosen = registry.resolve_ids(ids)
    jobs = [(i, cfg, ctx, None) for i in chosen]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(_verify_one, jobs))
    else:
        reports = [_verify_one(j) for j in jobs]
    return Summary(reports, aggregate_verdict(r.verdict for r in reports))


# -- serialisation ---------------------------------------------------------------


def report_document(reports, verdict: Optional[str] = None) -> str:
    """JSON text with a fixed key order; identical runs give identical text."""
    reports = list(reports)
    doc = {
        "verdict": verdict or aggregate_verdict(r.verdict for r in reports),
        "reports": [r.to_dict() for r in reports],
    }
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


TABLE_FIELDS = ("identity_id", "trial", "n", "rel_error", "pass")


def report_table(reports) -> str:
    """CSV, one row per (trial, order)."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(TABLE_FIELDS)
    for r in reports:
        for t in r.trials:
            w.writerow([r.identity_id, t.trial, t.n, f"{t.rel_error:.6e}", "true" if t.passed else "false"])
    return buf.getvalue()


def summary_line(r: VerificationReport) -> str:
    tried = "" if r.variant_used == "literal" else f" (variant {r.variant_used})"
    return f"{r.identity_id:<4} {r.verdict:<12} max_rel_error={r.max_rel_error:.3e} resamples={r.resample_count}{tried}"
