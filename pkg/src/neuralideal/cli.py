"""Command-line front end.

Exit codes: 0 success / pass / "true"; 1 claim failure or membership
"false"; 2 usage or parse error; 3 undecided (resource budget exceeded).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .code import CodeFormatError, format_code, parse_code
from .ideal import (
    DEFAULT_MAX_PAIRS,
    BudgetExceeded,
    Membership,
    code_groebner_basis,
    neural_ideal_generators,
)
from .polyring import PolynomialSyntaxError, format_poly, parse_monomial_order, parse_poly
from .relations import DEFAULT_SCAN_CAP, RelationKind, RelationVerdict, scan_relations
from .verify import CLAIM_IDS, Claim, verify_claim

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_UNDECIDED = 0, 1, 2, 3


class UsageError(Exception):
    pass


def format_report(items: Sequence[Claim | RelationVerdict], fmt: str = "text") -> str:
    """Serialize claims or verdicts; JSON keys follow the record field names."""
    if fmt == "json":
        return json.dumps([it.to_record() for it in items], indent=2, ensure_ascii=False)
    lines = [it.summary() if isinstance(it, Claim) else it.text() for it in items]
    return "\n".join(lines)


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, help="number of neurons / variables")
    common.add_argument("--code", help='code text, e.g. "e,3,13,23" or "000,001"')
    common.add_argument("--order", default="grevlex",
                        choices=["grevlex", "grlex", "lex", "grevlex-rev", "grlex-rev", "lex-rev"])
    common.add_argument("--format", choices=["text", "json"], default=None)
    common.add_argument("--budget", type=int, default=DEFAULT_MAX_PAIRS,
                        help="maximum S-pairs per Groebner basis computation")

    parser = argparse.ArgumentParser(prog="neuralideal", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    code_p = sub.add_parser("code", help="code utilities")
    code_sub = code_p.add_subparsers(dest="action", required=True)
    cp = code_sub.add_parser("parse", parents=[common], help="parse and print a code canonically")
    cp.add_argument("--notation", choices=["binary", "support"], default="binary")

    ideal_p = sub.add_parser("ideal", help="neural ideal of a code")
    ideal_sub = ideal_p.add_subparsers(dest="action", required=True)
    ideal_sub.add_parser("gens", parents=[common], help="characteristic pseudo-monomials of non-codewords")
    ideal_sub.add_parser("gb", parents=[common], help="reduced Groebner basis of the neural ideal")

    mem = sub.add_parser("member", parents=[common], help="decide membership in J_C or I(C)")
    mem.add_argument("--in", dest="ideal", choices=["J", "I"], required=True)
    mem.add_argument("--poly", required=True)

    rel_p = sub.add_parser("relations", help="receptive-field relations")
    rel_sub = rel_p.add_subparsers(dest="action", required=True)
    scan = rel_sub.add_parser("scan", parents=[common], help="verdicts for every parameter choice")
    scan.add_argument("--kinds", default="T1,T2,T3",
                      help="comma separated kinds from " + ",".join(k.value for k in RelationKind))
    scan.add_argument("--max-n", type=int, default=DEFAULT_SCAN_CAP)

    ver = sub.add_parser("verify", parents=[common], help="run verification claims")
    ver.add_argument("claim", help="claim id or 'all': " + ", ".join(CLAIM_IDS))
    ver.add_argument("--max-n", type=int, default=4)
    ver.add_argument("--sample", type=int, default=None, help="codes sampled at n=4 (0 = exhaustive)")
    ver.add_argument("--seed", type=int, default=None)
    return parser


def _need_n(args) -> int:
    if args.n is None:
        raise UsageError("--n is required")
    if args.n < 1:
        raise UsageError("--n must be positive")
    return args.n


def _need_code(args):
    if args.code is None:
        raise UsageError("--code is required")
    return parse_code(args.code, _need_n(args))


def _membership(args) -> Membership:
    order = parse_monomial_order(args.order, args.n)
    return Membership(order=order, max_pairs=args.budget)


def _run(args, out) -> int:
    fmt = args.format or ("json" if args.command == "verify" else "text")

    if args.command == "code":
        code = _need_code(args)
        if fmt == "json":
            out.write(json.dumps({"n": code.n, "words": [str(w) for w in code],
                                  "supports": [sorted(w.support) for w in code]}) + "\n")
        else:
            out.write(format_code(code, args.notation) + "\n")
        return EXIT_OK

    if args.command == "ideal":
        code = _need_code(args)
        if args.action == "gens":
            pres = neural_ideal_generators(code)
            if fmt == "json":
                out.write(json.dumps([str(pm) for pm in pres.pseudo_monomials]) + "\n")
            else:
                for pm in pres.pseudo_monomials:
                    out.write(f"{pm}\n")
            return EXIT_OK
        m = _membership(args)
        gb = code_groebner_basis(code, m.order, m.max_pairs)
        polys = [format_poly(g, m.order) for g in gb]
        if fmt == "json":
            out.write(json.dumps({"order": str(m.order), "basis": polys}) + "\n")
        else:
            for p in polys:
                out.write(p + "\n")
        return EXIT_OK

    if args.command == "member":
        code = _need_code(args)
        f = parse_poly(args.poly, code.n)
        m = _membership(args)
        result = m.in_J(f, code) if args.ideal == "J" else m.in_I(f, code)
        if fmt == "json":
            out.write(json.dumps({"poly": format_poly(f), "ideal": args.ideal, "member": result}) + "\n")
        else:
            out.write(("true" if result else "false") + "\n")
        return EXIT_OK if result else EXIT_FALSE

    if args.command == "relations":
        code = _need_code(args)
        try:
            kinds = [RelationKind(k.strip()) for k in args.kinds.split(",") if k.strip()]
        except ValueError as e:
            raise UsageError(str(e)) from None
        verdicts = scan_relations(code, kinds, _membership(args), cap=args.max_n)
        out.write(format_report(verdicts, fmt) + "\n")
        return EXIT_OK

    if args.command == "verify":
        n = args.n if args.n is not None else 3
        if not 1 <= n <= args.max_n:
            raise UsageError(f"--n must lie in [1, {args.max_n}]")
        try:
            claims = verify_claim(args.claim, n, args.sample, args.seed, _membership(args))
        except KeyError as e:
            raise UsageError(e.args[0]) from None
        out.write(format_report(claims, fmt) + "\n")
        if any(c.status == "fail" for c in claims):
            return EXIT_FALSE
        if any(c.status == "undecided" for c in claims):
            return EXIT_UNDECIDED
        return EXIT_OK

    raise UsageError(f"unknown command {args.command!r}")


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return _run(args, out)
    except (UsageError, CodeFormatError, PolynomialSyntaxError, ValueError, IndexError) as e:
        err.write(f"neuralideal: error: {e}\n")
        return EXIT_USAGE
    except BudgetExceeded as e:
        err.write(f"neuralideal: undecided: {e}\n")
        return EXIT_UNDECIDED


def main() -> None:
    sys.exit(run())
