"""Command line front end: ``kappaforms check|eval|act|table``."""
from __future__ import annotations

import argparse
import json
import sys

from ._rational import rational
from .action import ActionEngine, UnrealizeError
from .algebra import AlgebraError, Context, commutator, format_coefficient
from .closure import closure_detect
from .nc import NCError, NCExpression
from .parser import ParseError, parse, parse_ast
from .realizations import FAMILIES, build_realization
from .verifier import DEFAULT_SAMPLES, SUITE_NAMES, SuiteConfig, format_c, run_suite, suite_passed

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _rational_arg(text):
    try:
        num, _, den = text.partition("/")
        return rational(int(num), int(den) if den else 1)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a rational literal p/q, got {text!r}") from None


def _n_arg(text):
    n = int(text)
    if n < 2:
        raise argparse.ArgumentTypeError("n must be at least 2")
    return n


def _order_arg(text):
    n = int(text)
    if n < 0:
        raise argparse.ArgumentTypeError("order must be nonnegative")
    return n


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=_n_arg, default=4, help="dimension (default 4)")
    common.add_argument("--order", type=_order_arg, default=6, help="truncation order in a0 (default 6)")
    common.add_argument("--family", choices=FAMILIES, default="d1")
    common.add_argument("--c", type=_rational_arg, default=rational(1), help="family parameter p/q (default 1)")
    common.add_argument("--format", choices=("text", "structured"), default="text")
    common.add_argument("--seed", type=int, default=0)

    p = argparse.ArgumentParser(prog="kappaforms", description="Exact checks for kappa-Minkowski realizations.")
    sub = p.add_subparsers(dest="verb", required=True)
    ch = sub.add_parser("check", parents=[common], help="run a verification suite")
    ch.add_argument("suite", choices=SUITE_NAMES)
    ch.add_argument("--samples", type=int, default=DEFAULT_SAMPLES, help="random Jacobi triples per family")
    ev = sub.add_parser("eval", parents=[common], help="print the normal form of an expression")
    ev.add_argument("expr")
    act = sub.add_parser("act", parents=[common], help="Lorentz action GEN |> EXPR in the PBW basis")
    act.add_argument("gen", help="M[mu,nu], Mt[mu,nu] or M1[mu,nu]")
    act.add_argument("expr")
    tb = sub.add_parser("table", parents=[common], help="print a commutator table")
    tb.add_argument("which", choices=("xi-x",))
    return p


def _emit(args, out, text_lines, record):
    if args.format == "structured":
        out.write(json.dumps(record, sort_keys=True) + "\n")
    else:
        for line in text_lines:
            out.write(line + "\n")


def cmd_check(args, out):
    cfg = SuiteConfig(n=args.n, order=args.order, family=args.family, c=args.c, seed=args.seed, samples=args.samples)
    reports = run_suite(args.suite, cfg)
    if args.format == "structured":
        for rep in reports:
            out.write(json.dumps(rep.to_record(), sort_keys=True) + "\n")
    else:
        for rep in reports:
            out.write(rep.to_text() + "\n")
        checks = [r for r in reports if not r.is_finding]
        failed = sum(not r.passed for r in checks)
        out.write(f"{len(checks)} checks, {failed} failed, {len(reports) - len(checks)} findings\n")
    return EXIT_OK if suite_passed(reports) else EXIT_FAIL


def cmd_eval(args, out):
    ctx = Context(args.n, args.order)
    value = parse(args.expr, ctx, args.family, args.c)
    kind = "nc" if isinstance(value, NCExpression) else "element"
    _emit(args, out, [str(value)], {"input": args.expr, "kind": kind, "result": str(value)})
    return EXIT_OK


def _generator(text, n):
    node = parse_ast(text, n)
    if node[0] != "sym" or node[1] not in ("M", "Mt", "M1"):
        raise ParseError(f"generator must be M[mu,nu], Mt[mu,nu] or M1[mu,nu], got {text!r}", 0)
    return (node[1],) + node[2]


def cmd_act(args, out):
    ctx = Context(args.n, args.order)
    family = args.family if args.family != "sitarz" else "d1"
    gen = _generator(args.gen, args.n)
    r = build_realization(args.n, args.order, family, args.c)
    engine = ActionEngine(r)
    cache = {("r", family): r, ("e", family): engine}
    value = parse(args.expr, ctx, family, args.c, cache=cache)
    if not isinstance(value, NCExpression):
        raise ParseError("act needs an expression in xhat/xi only", 0)
    result = engine.lorentz_act(gen, value)
    _emit(args, out, [str(result)], {"generator": args.gen, "input": args.expr, "family": family, "result": str(result)})
    return EXIT_OK


def _basis_name(a):
    return "thetap" if a == "thetap" else f"xi[{a}]"


def cmd_table(args, out):
    r = build_realization(args.n, args.order, args.family, args.c)
    res = closure_detect(r)
    closed_with = "span{xi}"
    if not res.closed and r.thetap is not None:
        res = closure_detect(r, include_thetap=True)
        closed_with = "span{xi, thetap}"
    lines = [f"# [xi[mu], xhat[nu]] family={r.family} n={r.n} order={r.order} c={format_c(r.c)}"]
    rows = []
    for mu in range(r.n):
        for nu in range(r.n):
            comm = commutator(r.xi[mu], r.xhat[nu])
            consts = res.constants.get((mu, nu))
            if consts is None:
                kt = "not constant"
            else:
                parts = [f"({format_coefficient(k.terms)})*{_basis_name(a)}" for a, k in sorted(consts.items(), key=str)]
                kt = " + ".join(parts) if parts else "0"
            lines.append(f"[xi[{mu}],xhat[{nu}]] = {kt}")
            rows.append({"mu": mu, "nu": nu, "commutator": str(comm), "constants": kt})
    lines.append(f"closed over {closed_with}: {'yes' if res.closed else 'no'}")
    if args.format == "structured":
        for row in rows:
            out.write(json.dumps(dict(row, family=r.family), sort_keys=True) + "\n")
        out.write(json.dumps({"family": r.family, "closed": res.closed, "basis": closed_with}, sort_keys=True) + "\n")
    else:
        out.write("\n".join(lines) + "\n")
    return EXIT_OK


COMMANDS = {"check": cmd_check, "eval": cmd_eval, "act": cmd_act, "table": cmd_table}


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return COMMANDS[args.verb](args, out)
    except (ParseError, NCError, UnrealizeError, AlgebraError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
