"""Command-line front end.

Exit codes: 0 success, 1 a verifier found a counterexample, 2 usage error,
3 internal assertion or I/O failure.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys

import numpy as np

from . import lambda_modules as lm
from . import verify as vf
from .cache import BernoulliCache, resolve_cache_path
from .curves import ReductionType, make_triple, reduction_type
from .errors import FermatShaError
from .modarith import is_prime, primes_up_to
from .scan import scan, write_scan
from .selmer import evaluate_theorems, hurwitz_klein_report

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3

VERIFIERS = ("schur", "bk-lemma", "bk-closed-form", "vandiver", "tame-nonsimple", "b-half")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _cache(args) -> BernoulliCache:
    return BernoulliCache(resolve_cache_path(args.cache))


def _dump(obj) -> None:
    print(json.dumps(obj, indent=2, ensure_ascii=False))


def cmd_classify(args) -> int:
    t = make_triple(args.p, args.a, args.b)
    red, w = reduction_type(t)
    if args.json:
        _dump({"p": int(t.p), "a": t.a, "b": t.b, "c": t.c, "reduction": red.value, "witness": w})
    else:
        print(f"{red.value} (witness {w})")
    return EXIT_OK


def cmd_scan(args) -> int:
    table = _cache(args).get(args.p)
    rows = scan(args.p, orbits=args.orbits, table=table, jobs=args.jobs, reduction=args.reduction)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            write_scan(rows, args.format, fh)
    else:
        write_scan(rows, args.format, sys.stdout)
    return EXIT_OK


def cmd_bernoulli(args) -> int:
    table = _cache(args).get(args.p)
    if args.k is not None:
        if args.k % 2 or not 2 <= args.k <= args.p - 3:
            raise UsageError(f"--k must be even in [2, {args.p - 3}]")
        print(table[args.k])
        return EXIT_OK
    for k in sorted(table.values):
        print(f"B_{k} = {table[k]} mod {args.p}")
    idx = ",".join(map(str, table.irregular_indices)) or "none"
    print(f"{'regular' if table.is_regular else 'irregular'}; irregular indices: {idx}")
    return EXIT_OK


def cmd_regular(args) -> int:
    lo, hi = args.range
    primes = [p for p in primes_up_to(hi) if p >= max(lo, 5)]
    tables = _cache(args).get_many(primes)
    for p in primes:
        t = tables[p]
        if t.is_regular:
            print(f"{p} regular")
        else:
            print(f"{p} irregular {','.join(map(str, t.irregular_indices))}")
    return EXIT_OK


def _print_report(report, as_json: bool) -> None:
    if as_json:
        _dump(report.to_dict())
        return
    for line in report.steps:
        print(line)
    print(f"verdicts: old={report.verdict_old} free={report.verdict_free} "
          f"nontrivial={report.verdict_nontrivial}")
    if report.rank_bound is not None:
        print(f"Mordell-Weil rank bound: {report.rank_bound}")
    for line in report.conclusions:
        print(f"conclusion: {line}")
    for fact in report.external_facts_used:
        print(f"external fact used: {fact}")


def cmd_theorems(args) -> int:
    t = make_triple(args.p, args.a, args.b)
    report = evaluate_theorems(t, _cache(args).get(args.p), rank_positive=args.rank_positive)
    _print_report(report, args.json)
    return EXIT_OK


def cmd_hurwitz_klein(args) -> int:
    report = hurwitz_klein_report(external_rank_positive=not args.no_rank_positive)
    if args.json:
        _dump(report.to_dict())
    else:
        for fact in report.external_facts_used:
            print(f"using external fact: {fact}")
        for line in report.steps:
            print(line)
        if args.no_rank_positive:
            print("conclusions: " + "; ".join(report.conclusions))
    return EXIT_OK


def _run_verifier(args) -> vf.VerificationOutcome:
    name = args.name
    pmax = args.pmax
    if pmax is None:
        pmax = vf.EXTENDED_PMAX if args.extended else vf.DEFAULT_PMAX
    if name == "schur":
        out = vf.verify_schur_identity(3, 7, exhaustive=True)
        for p in primes_up_to(min(pmax, 31)):
            if p >= 7:
                sub = vf.verify_schur_identity((p - 1) // 2, p, trials=args.trials, seed=args.seed * 1000 + p)
                out.trials += sub.trials
                out.failures.extend(sub.failures)
        out.name = f"schur p<={min(pmax, 31)}"
        return out.finish()
    if name in ("bk-lemma", "bk-closed-form"):
        primes = [p for p in primes_up_to(min(pmax, 31)) if p >= 7] if args.pmax else (7, 11, 19, 23)
        return vf.verify_bk_sweep(primes, target="gamma" if name == "bk-lemma" else "closed-form")
    if name == "vandiver":
        return vf.verify_vandiver_range(7, pmax)
    if name == "tame-nonsimple":
        return vf.verify_tame_nonsimple(pmax)
    if name == "b-half":
        return vf.verify_b_half(pmax)
    raise UsageError(f"unknown verifier {name!r}; choose from {', '.join(VERIFIERS)}")


def cmd_verify(args) -> int:
    out = _run_verifier(args)
    if args.json:
        _dump(out.to_dict())
    else:
        print(out.summary())
        for f in out.failures[: args.show]:
            print("  counterexample: " + json.dumps(f, sort_keys=True))
    return EXIT_OK if out.passed else EXIT_FAIL


def cmd_modules_deduce(args) -> int:
    with open(args.constraints, encoding="utf-8") as fh:
        constraints = lm.parse_constraints(fh.read())
    caps = [c.value for c in constraints if c.kind is lm.ConstraintKind.PART_CAP]
    part_cap = args.part_cap or (min(caps) if caps else 4)
    found = lm.deduce_partitions(constraints, part_cap=part_cap, dim_cap=args.dim_cap)
    for q in found:
        print("(" + ",".join(map(str, q)) + ")")
    print(f"{len(found)} partition(s)", file=sys.stderr)
    return EXIT_OK


def _parse_parts(text: str) -> tuple:
    try:
        return lm.as_partition(int(s) for s in text.split(",") if s.strip())
    except ValueError as exc:
        raise UsageError(f"bad --parts {text!r}: {exc}") from None


def cmd_modules_pairing_test(args) -> int:
    parts = _parse_parts(args.parts)
    if not is_prime(args.p):
        raise UsageError(f"--p {args.p} is not prime")
    rng = np.random.default_rng(args.seed)
    base = lm.hyperbolic_pairing(parts, args.p)
    mods = [base]
    for i in range(args.trials):
        sampler = lm.random_congruent_pairing if i % 2 == 0 else lm.random_compatible_pairing
        mods.append(sampler(base, rng))
    failures = []
    for idx, mod in enumerate(mods):
        for m in range(1, args.max_mn + 1):
            if not lm.verify_annihilator(mod, m):
                failures.append(f"pairing {idx}: annihilator m={m}")
            for n in range(1, args.max_mn + 1):
                if not lm.verify_perfect_restriction(mod, m, n):
                    failures.append(f"pairing {idx}: restriction m={m} n={n}")
    print(f"parts={parts} p={args.p}: {len(mods)} pairings, "
          f"{'passed' if not failures else f'FAILED ({len(failures)})'}")
    for f in failures[:10]:
        print("  " + f)
    return EXIT_FAIL if failures else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="fermat-sha", description=__doc__.splitlines()[0])
    ap.add_argument("--cache", help="Bernoulli cache file (overrides $FERMAT_SHA_CACHE)")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    s = sub.add_parser("classify", help="reduction type of one triple")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--a", type=int, required=True)
    s.add_argument("--b", type=int, required=True)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("scan", help="evaluate every triple at one prime")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--orbits", action="store_true", help="one row per isomorphism class")
    s.add_argument("--out")
    s.add_argument("--format", choices=("csv", "json"), default="csv")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--reduction", choices=[r.value for r in ReductionType])
    s.set_defaults(func=cmd_scan)

    s = sub.add_parser("bernoulli", help="Bernoulli numbers mod p")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--k", type=int)
    s.set_defaults(func=cmd_bernoulli)

    s = sub.add_parser("regular", help="regularity of every prime in a range")
    s.add_argument("--range", type=int, nargs=2, metavar=("LO", "HI"), required=True)
    s.set_defaults(func=cmd_regular)

    s = sub.add_parser("theorems", help="theorem verdicts for one triple")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--a", type=int, required=True)
    s.add_argument("--b", type=int, required=True)
    s.add_argument("--rank-positive", action="store_true",
                   help="assume the Mordell-Weil rank over Q is positive")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_theorems)

    s = sub.add_parser("report-hurwitz-klein", help="full chain for p=19, (7,1,-8)")
    s.add_argument("--no-rank-positive", action="store_true",
                   help="do not use the positive-rank input")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_hurwitz_klein)

    s = sub.add_parser("verify", help="run an identity verifier")
    s.add_argument("name", choices=VERIFIERS)
    s.add_argument("--pmax", type=int)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--trials", type=int, default=20)
    s.add_argument("--extended", action="store_true", help="sweep to p <= 10^4")
    s.add_argument("--show", type=int, default=5, help="counterexamples to print")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("modules", help="finite lambda-module lab")
    msub = s.add_subparsers(dest="modules_command", parser_class=_Parser)
    msub.required = True
    d = msub.add_parser("deduce", help="partitions satisfying a constraint file")
    d.add_argument("--constraints", required=True)
    d.add_argument("--part-cap", type=int)
    d.add_argument("--dim-cap", type=int, default=12)
    d.set_defaults(func=cmd_modules_deduce)
    t = msub.add_parser("pairing-test", help="annihilator and restriction checks")
    t.add_argument("--parts", required=True)
    t.add_argument("--p", type=int, required=True)
    t.add_argument("--trials", type=int, default=100)
    t.add_argument("--seed", type=int, default=0)
    t.add_argument("--max-mn", type=int, default=4)
    t.set_defaults(func=cmd_modules_pairing_test)
    return ap


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"fermat-sha: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"fermat-sha: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (AssertionError, OSError) as exc:
        print(f"fermat-sha: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (FermatShaError, ValueError) as exc:
        print(f"fermat-sha: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
