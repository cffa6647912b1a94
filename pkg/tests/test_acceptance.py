"""The nine acceptance criteria, each at its stated tolerance and time limit.

Every test records one ``PASS`` or ``FAIL`` line, shown in the terminal summary.
"""

import cmath
import io
import random
import time

import pytest
from gmpy2 import mpc

from ellverify import registry, suites
from ellverify.cli import main
from ellverify.identities.special import _p1_rhs_sum, p1_namespace, p1_params_for_p2, p1_reduced
from ellverify.numerics import DEFAULT_CONTEXT, rel_error
from ellverify.theta import FactorialArgs, Kernel, qp_factorial, theta
from ellverify.verifier import FAIL, PASS, Fault, SampleConfig, verify_identity

pytestmark = pytest.mark.acceptance


class Criterion:
    def __init__(self, log, number, title, limit):
        self.log, self.number, self.title, self.limit = log, number, title, limit

    def __enter__(self):
        self.start = time.perf_counter()
        self.ok = False
        self.detail = ""
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        in_time = self.limit is None or elapsed < self.limit
        ok = self.ok and exc_type is None and in_time
        limit = "" if self.limit is None else f" (limit {self.limit:g} s)"
        note = self.detail if exc_type is None else f"{exc_type.__name__}: {exc}"
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {self.number}: {self.title}; {elapsed:.1f} s{limit}; {note}"
        self.log.append(line)
        print(line)
        if exc_type is None:
            assert in_time, f"criterion {self.number} took {elapsed:.1f} s"
            assert self.ok, note
        return False


def _polar(rng, lo, hi):
    return mpc(cmath.rect(rng.uniform(lo, hi), rng.uniform(0.0, 2 * cmath.pi)))


def test_criterion_1_theta_kernel(acceptance_log):
    with Criterion(acceptance_log, 1, "theta inversion, quasi-periodicity and factorial splitting", 5) as c:
        rng = random.Random(1)
        worst = 0.0
        with DEFAULT_CONTEXT.activate():
            for _ in range(200):
                a, q = _polar(rng, 0.5, 2.0), _polar(rng, 0.5, 2.0)
                p = _polar(rng, 0.05, 0.3)
                n, m = rng.randrange(0, 6), rng.randrange(0, 6)
                th = theta(a, p)
                worst = max(
                    worst,
                    float(rel_error(th, -a * theta(1 / a, p))),
                    float(rel_error(theta(p * a, p), -th / a)),
                    float(rel_error(
                        qp_factorial(FactorialArgs(a, q, p, n + m)),
                        qp_factorial(FactorialArgs(a, q, p, n)) * qp_factorial(FactorialArgs(a * q**n, q, p, m)),
                    )),
                )
        c.ok = worst < 1e-50
        c.detail = f"worst rel_error {worst:.2e} over 200 draws"


def test_criterion_2_matrix_pairs(acceptance_log):
    with Criterion(acceptance_log, 2, "matrix inverse pairs and the M/B cross-ratio test", 30) as c:
        res = suites.check_matrices(SampleConfig(seed=0))
        c.ok = res.verdict == PASS and all(ch.metric < 1e-30 for ch in res.checks)
        c.detail = "; ".join(f"{ch.name} {ch.metric:.2e}" for ch in res.checks)


def test_criterion_3_lemma(acceptance_log):
    with Criterion(acceptance_log, 3, "inverse-pair lemma on 100 random triangular instances", 30) as c:
        res = suites.check_lemma(SampleConfig(seed=0), instances=100, n_max=8)
        ch = res.checks[0]
        c.ok = ch.verdict == PASS and ch.metric < 1e-25
        c.detail = f"worst rel_error {ch.metric:.2e}"


def _verify_group(ids, seed=42):
    reports = [verify_identity(i, SampleConfig(seed=seed, trials=50)) for i in ids]
    return reports, max(r.max_rel_error for r in reports)


def test_criterion_4_expansions(acceptance_log):
    with Criterion(acceptance_log, 4, "E1-E4 with random sequences, 50 draws, n = 0..6", 120) as c:
        reports, worst = _verify_group(["E1", "E2", "E3", "E4"])
        c.ok = all(r.verdict == PASS and r.config["n_range"] is None for r in reports) and worst < 1e-30
        c.detail = f"worst rel_error {worst:.2e}"


def test_criterion_5_summations_and_transformations(acceptance_log):
    with Criterion(acceptance_log, 5, "S1-S6 (n = 0..8) and T1-T8 (n = 0..6), 50 draws", 300) as c:
        reports, worst = _verify_group(registry.resolve_ids(["S", "T"]))
        orders = {r.identity_id: max(t.n for t in r.trials) for r in reports}
        splits = {r.identity_id: r.variant_used for r in reports if len(r.variants_tried) > 1}
        c.ok = (all(r.verdict == PASS for r in reports) and worst < 1e-30
                and all(orders[i] == (8 if i[0] == "S" else 6) for i in orders)
                and splits == {"S1": "corrected"})
        c.detail = f"worst rel_error {worst:.2e}; variants resolved {splits}"


def test_criterion_6_specials(acceptance_log):
    with Criterion(acceptance_log, 6, "P1-P3 both sides, P1 -> P2 chain, p -> 0 limit scaling", 60) as c:
        reports = [verify_identity(i, SampleConfig(seed=42, trials=50, n_range=(0, 8))) for i in ("P1", "P2", "P3")]
        chain = 0.0
        rng = random.Random(6)
        with DEFAULT_CONTEXT.activate():
            for _ in range(20):
                p1, p2 = p1_params_for_p2(_polar(rng, 0.5, 2), _polar(rng, 0.5, 2), _polar(rng, 0.8, 1.25))
                v = p1_namespace(p1)
                v.p = mpc(0)
                for n in range(9):
                    K = Kernel(DEFAULT_CONTEXT)
                    chain = max(chain,
                                float(rel_error(_p1_rhs_sum(v, n, K), registry.eval_side("P2", p2, n, "lhs"))),
                                float(rel_error(p1_reduced(v, n, K), registry.eval_side("P2", p2, n, "rhs"))))
        limits = suites.limit_check(SampleConfig(seed=42))
        c.ok = all(r.verdict == PASS for r in reports) and chain < 1e-30 and limits.verdict == PASS
        c.detail = (f"both sides {max(r.max_rel_error for r in reports):.2e}; chain {chain:.2e}; "
                    f"limit ratios {', '.join(f'{ch.metric:.2f}' for ch in limits.checks)}")


def test_criterion_7_linter(acceptance_log):
    with Criterion(acceptance_log, 7, "balancing of every elliptic sum; planted 1.01 defect flagged", 10) as c:
        res = suites.lint_all(SampleConfig(seed=42))
        c.ok = res.verdict == PASS and len(res.checks) == 14
        c.detail = f"{len(res.checks)} sums checked, worst deviation {max(ch.metric for ch in res.checks):.2e}"


def test_criterion_8_fault_sensitivity(acceptance_log):
    with Criterion(acceptance_log, 8, "S1 with a 1+1e-10 fault on either side", 10) as c:
        cfg = SampleConfig(seed=42, trials=5)
        reps = [verify_identity("S1", cfg, fault=Fault(side, 1e-10)) for side in ("lhs", "rhs")]
        c.ok = all(r.verdict == FAIL and 1e-11 <= r.max_rel_error <= 1e-9 for r in reps)
        c.detail = ", ".join(f"{s} {r.max_rel_error:.3e}" for s, r in zip(("lhs", "rhs"), reps))


def test_criterion_9_determinism(tmp_path, acceptance_log):
    with Criterion(acceptance_log, 9, "verify-all --seed 42 twice gives byte-identical reports", None) as c:
        paths = [tmp_path / "first.json", tmp_path / "second.json"]
        codes = [main(["verify-all", "--seed", "42", "--out", str(p)], io.StringIO()) for p in paths]
        same = paths[0].read_bytes() == paths[1].read_bytes()
        c.ok = same and codes == [0, 0]
        c.detail = f"exit codes {codes}; {paths[0].stat().st_size} bytes each; identical={same}"
