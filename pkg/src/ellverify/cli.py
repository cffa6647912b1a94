"""Command-line front end.

Exit status: 0 when every requested check passes, 1 on any failure, 2 when
something was inconclusive, 64 on a usage error.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import registry, suites
from .identities.core import UnknownIdentity
from .numerics import NumericContext
from .verifier import FAIL, INCONCLUSIVE, PASS, SampleConfig, report_document, report_table, summary_line, verify_all

EXIT = {PASS: 0, FAIL: 1, INCONCLUSIVE: 2}
EXIT_USAGE = 64
PRECISION_ENV = "ELLVERIFY_PREC"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _range(text: str, kind=int):
    lo, sep, hi = text.partition("..")
    try:
        lo_v = kind(lo)
        hi_v = kind(hi) if sep else lo_v
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected lo..hi, got {text!r}") from None
    if hi_v < lo_v:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo_v, hi_v


def _float_range(text: str):
    return _range(text, float)


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--prec", type=int, default=None, help=f"working precision in bits (default 256, or ${PRECISION_ENV})")
    p.add_argument("--tol", type=float, default=None, help="relative tolerance (default 1e-30)")
    p.add_argument("--nome", type=_float_range, default=(0.05, 0.3), metavar="LO..HI", help="band for |p|")
    p.add_argument("--out", type=Path, default=None, help="write the report here")
    p.add_argument("--format", choices=("report-doc", "table"), default="report-doc")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ellverify", description="Numerical verification of elliptic hypergeometric identities.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("list", help="list the registered identities")

    for name, helptext in (("verify", "verify selected identities"), ("verify-all", "verify every identity")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--id", action="append", default=[], help="identity id or kind prefix (repeatable)")
        p.add_argument("--n", type=_range, default=None, metavar="LO..HI", help="orders to check")
        p.add_argument("--workers", type=int, default=1)
        _add_common(p)

    for name, helptext in (
        ("check-matrices", "inverse residuals of the matrix pairs"),
        ("check-lemma", "the inverse-pair lemma on random instances"),
        ("lint", "balancing and ellipticity of every elliptic sum"),
        ("limit-check", "p -> 0 consistency of P1-P3 with T3"),
    ):
        _add_common(sub.add_parser(name, help=helptext))
    return parser


def make_context(args) -> NumericContext:
    bits = args.prec
    if bits is None:
        env = os.environ.get(PRECISION_ENV)
        bits = int(env) if env else 256
    overrides = {} if args.tol is None else {"rel_tolerance": args.tol}
    return NumericContext.for_precision(bits, **overrides)


def _write(path: Optional[Path], text: str) -> None:
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")


def _cmd_list(out) -> int:
    for id, title, anchor, kind in registry.list_identities():
        print(f"{id}  {kind}  {title}  {anchor}", file=out)
    return 0


def _cmd_verify(args, ctx, out) -> int:
    if args.command == "verify" and not args.id:
        raise UsageError("verify needs at least one --id")
    ids = registry.resolve_ids(args.id)
    cfg = SampleConfig(seed=args.seed, trials=args.trials, n_range=args.n, nome_band=args.nome)
    summary = verify_all(cfg, ctx, ids, workers=args.workers)
    for r in summary.reports:
        print(summary_line(r), file=out)
    if args.format == "table":
        _write(args.out, report_table(summary.reports))
    else:
        _write(args.out, report_document(summary.reports, summary.verdict))
    counts = summary.counts
    print(f"{summary.verdict}: {counts[PASS]} pass, {counts[FAIL]} fail, {counts[INCONCLUSIVE]} inconclusive", file=out)
    return EXIT[summary.verdict]


_SUITES = {
    "check-matrices": lambda cfg, ctx: [suites.check_matrices(cfg, ctx)],
    "check-lemma": lambda cfg, ctx: [suites.check_lemma(cfg, ctx), suites.check_m_factors(cfg, ctx)],
    "lint": lambda cfg, ctx: [suites.lint_all(cfg, ctx)],
    "limit-check": lambda cfg, ctx: [suites.limit_check(cfg, ctx)],
}


def _cmd_suite(args, ctx, out) -> int:
    cfg = SampleConfig(seed=args.seed, trials=max(args.trials, 1), nome_band=args.nome)
    results = _SUITES[args.command](cfg, ctx)
    for res in results:
        for line in res.lines():
            print(line, file=out)
    verdict = suites.aggregate_verdict(r.verdict for r in results)
    _write(args.out, "".join(r.document() for r in results))
    print(verdict, file=out)
    return EXIT[verdict]


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "list":
            return _cmd_list(out)
        if args.trials < 1:
            raise UsageError("--trials must be at least 1")
        nlo, nhi = args.nome
        if not 0 < nlo <= nhi < 1:
            raise UsageError(f"--nome must lie in (0, 1), got {nlo}..{nhi}")
        try:
            ctx = make_context(args)
        except ValueError as exc:
            raise UsageError(f"--prec/--tol: {exc}") from None
        if args.command in ("verify", "verify-all"):
            return _cmd_verify(args, ctx, out)
        return _cmd_suite(args, ctx, out)
    except UnknownIdentity as exc:
        print(f"ellverify: unknown identity {exc.args[0]!r}", file=sys.stderr)
        return EXIT_USAGE
    except UsageError as exc:
        print(f"ellverify: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
