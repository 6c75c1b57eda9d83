"""Command-line front-end: classify, witness, search, corpus.

Exit codes are a stable API for scripted pipelines:

  classify   0 = PR, 1 = NOT_PR, 2 = UNKNOWN
  witness    0 = witness printed, 3 = method hypotheses not met
  search     0 = conclusive (bad coloring found / forced proven / threshold
                 found), 1 = threshold not found within the bound,
                 4 = node budget exhausted (Inconclusive)
  corpus     0 = golden match, 5 = mismatch (diff printed)
  64 = malformed polynomial (position diagnostics), 70 = internal error

RADO_FORGE_BUDGET overrides the default search node budget.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Any, Optional

from . import corpus as corpus_mod
from .classify import NoConstantTermError, NotLinearError, classify, classify_affine
from .poly import (
    ConstantTermError,
    EmptyPolynomialError,
    Polynomial,
    PolySyntaxError,
    parse,
    parse_with_constant,
)
from .search import DEFAULT_NODE_BUDGET, INCONCLUSIVE, find_bad_coloring, rado_number
from .witness import HypothesisFailure, SearchSpaceTooLargeError, build_witness

EXIT_PR = 0
EXIT_NOT_PR = 1
EXIT_UNKNOWN = 2
EXIT_METHOD_INAPPLICABLE = 3
EXIT_INCONCLUSIVE = 4
EXIT_CORPUS_MISMATCH = 5
EXIT_PARSE_ERROR = 64
EXIT_ERROR = 70

_STATUS_EXIT = {"PR": EXIT_PR, "NOT_PR": EXIT_NOT_PR, "UNKNOWN": EXIT_UNKNOWN}


def _default_budget() -> int:
    raw = os.environ.get("RADO_FORGE_BUDGET")
    if raw:
        try:
            return int(raw)
        except ValueError:
            pass
    return DEFAULT_NODE_BUDGET


def _emit(payload: dict[str, Any]) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True))


def _parse_or_exit(text: str, allow_constant: bool) -> tuple[Polynomial, int]:
    try:
        if allow_constant:
            return parse_with_constant(text)
        return parse(text), 0
    except PolySyntaxError as exc:
        print(f"parse error {exc}", file=sys.stderr)
        here = " " * exc.position + "^"
        print(f"  {text}\n  {here}", file=sys.stderr)
        raise SystemExit(EXIT_PARSE_ERROR)
    except (ConstantTermError, EmptyPolynomialError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_PARSE_ERROR)


def cmd_classify(args: argparse.Namespace) -> int:
    p, constant = _parse_or_exit(args.polynomial, args.allow_constant)
    try:
        if constant != 0:
            verdict = classify_affine(p, constant)
            canonical = f"{p} {'+' if constant > 0 else '-'} {abs(constant)}"
        else:
            verdict = classify(p, ring=args.ring)
            canonical = str(p)
    except (NotLinearError, NoConstantTermError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if args.json:
        _emit(verdict.to_json(args.polynomial, canonical))
    else:
        print(f"polynomial : {canonical}")
        ring = "positive integers" if args.ring == "N" else "nonzero integers"
        print(f"status     : {verdict.status} (over the {ring})")
        print(f"injective  : {verdict.injective}")
        if verdict.certificate:
            print(f"certificate: {verdict.certificate.theorem}")
            for key, value in sorted(verdict.certificate.payload.items()):
                print(f"  {key} = {value}")
        for line in verdict.trace:
            print(f"trace: {line}")
        for note in verdict.notes:
            print(f"note : {note}")
    return _STATUS_EXIT[verdict.status]


def cmd_witness(args: argparse.Namespace) -> int:
    p, _ = _parse_or_exit(args.polynomial, False)
    try:
        witnesses = build_witness(
            p,
            method=args.method,
            n_bound=args.n_bound,
            injective=args.injective,
            limit=args.limit,
        )
    except HypothesisFailure as exc:
        if args.json:
            _emit({"schema": 1, "error": "hypotheses not met", "reasons": exc.reasons})
        else:
            print("no witness: method hypotheses not met", file=sys.stderr)
            for reason in exc.reasons:
                print(f"  {reason}", file=sys.stderr)
        return EXIT_METHOD_INAPPLICABLE
    except SearchSpaceTooLargeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if args.json:
        payload = [w.to_json() for w in witnesses]
        _emit(payload[0] if args.limit == 1 and len(payload) == 1 else
              {"schema": 1, "witnesses": payload})
    else:
        for w in witnesses:
            values = ", ".join(f"{v}={w.assignment[v]}" for v in sorted(w.assignment))
            print(f"witness ({w.provenance}, injective={str(w.injective).lower()}): {values}")
            print(f"  value = {w.value}")
            if w.trace.get("eta") is not None:
                print(f"  eta = {w.trace['eta']}")
            if w.trace.get("eta_i"):
                print(f"  eta_i = {w.trace['eta_i']}")
            for key in sorted(w.trace.get("gamma", {})):
                members = w.trace.get("I", {}).get(key)
                print(f"  gamma[{key}] = {w.trace['gamma'][key]}  I[{key}] = {members}")
    return 0


def cmd_search(args: argparse.Namespace) -> int:
    p, _ = _parse_or_exit(args.polynomial, False)
    budget = args.budget if args.budget is not None else _default_budget()
    try:
        if args.threshold is not None:
            found = rado_number(
                p, args.colors, args.threshold, args.injective, budget, args.workers
            )
            if args.json:
                _emit(
                    {
                        "schema": 1,
                        "polynomial": str(p),
                        "r": args.colors,
                        "max_N": args.threshold,
                        "injective": args.injective,
                        "threshold": found,
                    }
                )
            elif found is None:
                print(f"no N <= {args.threshold} is forced for r={args.colors}")
            else:
                print(f"threshold: N = {found} is the least forced size for r={args.colors}")
            return 0 if found is not None else 1
        outcome = find_bad_coloring(
            p, args.colors, args.n_bound, args.injective, budget, args.workers
        )
        if args.json:
            _emit(outcome.to_json(str(p), args.colors, args.n_bound, args.injective))
        else:
            print(f"outcome: {outcome.kind}")
            if outcome.coloring is not None:
                print(f"coloring: {list(outcome.coloring.colors)}")
                for color, members in enumerate(outcome.coloring.classes()):
                    print(f"  class {color}: {members}")
            stats = outcome.stats
            print(
                f"stats: nodes={stats.nodes} constraints={stats.constraints} ms={int(stats.ms)}"
            )
        return EXIT_INCONCLUSIVE if outcome.kind == INCONCLUSIVE else 0
    except SearchSpaceTooLargeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def cmd_corpus(args: argparse.Namespace) -> int:
    if args.action == "list":
        fixtures = corpus_mod.load_fixtures(args.file)
        if args.json:
            _emit(
                {
                    "schema": 1,
                    "fixtures": [
                        {
                            "polynomial": f.text,
                            "status": f.status,
                            "certificate": f.theorem,
                            "injective": f.injective,
                            "reference": f.reference,
                        }
                        for f in fixtures
                    ],
                }
            )
        else:
            for f in fixtures:
                print(f"{f.text:55s} {f.status:8s} {f.theorem:22s} {f.reference}")
        return 0
    results = corpus_mod.run_corpus(args.file)
    all_match = all(r.match for r in results)
    if args.json:
        _emit(
            {
                "schema": 1,
                "fixtures": [r.to_json() for r in results],
                "all_match": all_match,
            }
        )
    else:
        for r in results:
            flag = "ok  " if r.match else "FAIL"
            print(f"{flag} {r.fixture.text:55s} {r.status:8s} {r.theorem}")
            for line in r.diff():
                print(f"     {line}")
        print(f"{'all fixtures match' if all_match else 'corpus mismatch'}")
    return 0 if all_match else EXIT_CORPUS_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rado-forge",
        description="Partition-regularity toolkit: classify polynomials, build "
        "solution witnesses, and search finite colorings for evidence.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="classify a polynomial")
    c.add_argument("polynomial")
    c.add_argument("--ring", choices=["N", "Z"], default="N")
    c.add_argument("--allow-constant", action="store_true")
    c.add_argument("--json", action="store_true")
    c.set_defaults(handler=cmd_classify)

    w = sub.add_parser("witness", help="construct a verified solution witness")
    w.add_argument("polynomial")
    w.add_argument("--method", choices=["auto", "reduct", "nlp", "brute"], default="auto")
    w.add_argument("--N", dest="n_bound", type=int, default=20)
    w.add_argument("--injective", action="store_true")
    w.add_argument("--limit", type=int, default=1)
    w.add_argument("--json", action="store_true")
    w.set_defaults(handler=cmd_witness)

    s = sub.add_parser("search", help="search r-colorings of [1..N]")
    s.add_argument("polynomial")
    s.add_argument("--colors", type=int, required=True)
    group = s.add_mutually_exclusive_group(required=True)
    group.add_argument("--N", dest="n_bound", type=int)
    group.add_argument("--threshold", type=int, metavar="MAXN")
    s.add_argument("--injective", action="store_true")
    s.add_argument("--budget", type=int, default=None)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--json", action="store_true")
    s.set_defaults(handler=cmd_search)

    k = sub.add_parser("corpus", help="run or list the bundled fixture corpus")
    k.add_argument("action", choices=["run", "list"])
    k.add_argument("--file", default=None, help="alternate fixture file")
    k.add_argument("--json", action="store_true")
    k.set_defaults(handler=cmd_corpus)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else EXIT_ERROR


def run() -> None:  # console script entry
    sys.exit(main())
