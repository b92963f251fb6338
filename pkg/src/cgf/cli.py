"""Command-line front end.

Exit codes: 0 success, 1 a verify suite failed, 2 domain error (including
invalid numeric arguments), 3 parse error.  ``--json`` prints one key-sorted
record tagged ``"schema": "cgf/1"``.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from .errors import DomainError, ParseError
from .su11 import FockTruncation, disentangle, exponent_factor, sandwich
from .text import format_coefficient, format_expr, parse_expr
from .wick import commutator, vacuum_expectation

SCHEMA = "cgf/1"
DEFAULT_BRACKET = "r*x_3"


def _complex_text(z: complex) -> str:
    return f"{z.real:.17g} {'-' if z.imag < 0 else '+'} {abs(z.imag):.17g}i"


def _complex_json(z: complex) -> dict:
    return {"re": z.real, "im": z.imag}


def _emit(args, record: dict, text: str) -> None:
    if args.json:
        record = {"schema": SCHEMA, "command": args.command, **record}
        sys.stdout.write(json.dumps(record, sort_keys=True, separators=(",", ":")) + "\n")
    else:
        sys.stdout.write(text.rstrip("\n") + "\n")


def cmd_normal_order(args) -> int:
    expr = parse_expr(args.expr)
    out = format_expr(expr)
    _emit(args, {"inputs": {"expr": args.expr}, "result": out, "exact": True}, out)
    return 0


def cmd_commutator(args) -> int:
    out = format_expr(commutator(parse_expr(args.lhs), parse_expr(args.rhs)))
    _emit(args, {"inputs": {"lhs": args.lhs, "rhs": args.rhs}, "result": out, "exact": True}, out)
    return 0


def cmd_vev(args) -> int:
    out = format_coefficient(vacuum_expectation(parse_expr(args.expr)))
    _emit(args, {"inputs": {"expr": args.expr}, "result": out, "exact": True}, out)
    return 0


def cmd_matrix_element(args) -> int:
    left, right = parse_expr(args.left), parse_expr(args.right)
    try:
        factor = exponent_factor(args.omega, args.v)
    except ValueError as exc:
        raise DomainError(str(exc)) from exc
    dis = disentangle(factor, args.t, perturb=args.perturb)
    value = sandwich(left, right, dis, args.omega)
    record = {
        "inputs": {"omega": args.omega, "v": args.v, "t": args.t, "left": args.left, "right": args.right},
        "result": _complex_json(value),
        "provenance": {
            "c_plus": _complex_json(dis.c_plus),
            "c_zero": _complex_json(dis.c_zero),
            "c_minus": _complex_json(dis.c_minus),
        },
        "exact": False,
    }
    _emit(args, record, _complex_text(value))
    return 0


def cmd_c6(args) -> int:
    from .vdw import REFERENCE_C6, VdwConfig, second_order_energy

    try:
        cfg = VdwConfig(
            series_tol=args.series_tol,
            quad_tol=args.quad_tol,
            contour_scale=args.contour_scale,
            truncation=FockTruncation(args.truncation),
            literal_square=args.literal_square,
        )
    except ValueError as exc:
        raise DomainError(str(exc)) from exc
    res = second_order_energy(cfg, oracle=args.oracle)
    record = {
        "inputs": {
            "series_tol": cfg.series_tol,
            "quad_tol": cfg.quad_tol,
            "contour_scale": cfg.scale,
            "truncation": cfg.truncation.max_quanta,
            "oracle": args.oracle,
            "literal_square": cfg.literal_square,
        },
        "result": res.to_dict(),
        "exact": False,
    }
    lines = [
        f"C6 = {res.c6:.10f}  (E2 = -C6 e^2/R^6)",
        f"estimated error   {res.estimated_error:.2e}",
        f"reference         {REFERENCE_C6}  (rel. dev. {abs(res.c6 - REFERENCE_C6) / REFERENCE_C6:.2e})",
        f"series terms      {res.series_terms_used}",
        f"quadrature nodes  {res.quad_nodes_used}",
    ]
    if res.oracle_c6 is not None:
        lines.append(f"oracle C6         {res.oracle_c6:.10f}  (truncation {cfg.truncation.max_quanta}, "
                     f"rel. delta {res.oracle_delta:.2e})")
    _emit(args, record, "\n".join(lines))
    return 0


def cmd_verify(args) -> int:
    from .verify import run_suite

    rep = run_suite(args.suite)
    text = "\n".join(rep.lines + [f"verify {rep.suite}: {'PASS' if rep.passed else 'FAIL'}"])
    _emit(args, {"inputs": {"suite": args.suite}, "result": rep.to_dict(), "exact": True}, text)
    return 0 if rep.passed else 1


def _positive(text: str) -> float:
    val = float(text)
    if not (math.isfinite(val) and val > 0):
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text!r}")
    return val


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print a key-sorted JSON record")
    parser = argparse.ArgumentParser(prog="cgf", description="Algebraic Coulomb Green function toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("normal-order", parents=[common], help="canonical normal-ordered form")
    p.add_argument("expr")
    p.set_defaults(func=cmd_normal_order)

    p = sub.add_parser("commutator", parents=[common], help="[A, B] in normal form")
    p.add_argument("lhs")
    p.add_argument("rhs")
    p.set_defaults(func=cmd_commutator)

    p = sub.add_parser("vev", parents=[common], help="exact vacuum expectation value")
    p.add_argument("expr")
    p.set_defaults(func=cmd_vev)

    p = sub.add_parser("matrix-element", parents=[common],
                       help="<0|L exp(-it(p(N+2)+q(M+M^))) R|0> via disentangling")
    p.add_argument("--omega", type=float, required=True)
    p.add_argument("--v", type=float, required=True)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--left", default=DEFAULT_BRACKET)
    p.add_argument("--right", default=DEFAULT_BRACKET)
    p.add_argument("--perturb", action="store_true", help="step off a degenerate t instead of failing")
    p.set_defaults(func=cmd_matrix_element)

    p = sub.add_parser("c6", parents=[common], help="van der Waals C6 of two hydrogen atoms")
    p.add_argument("--series-tol", type=_positive, default=1e-12)
    p.add_argument("--quad-tol", type=_positive, default=1e-8)
    p.add_argument("--contour-scale", type=_positive, default=None)
    p.add_argument("--truncation", type=int, default=160, help="Fock quanta for --oracle")
    p.add_argument("--oracle", action="store_true", help="rerun with the Fock resolvent and report the delta")
    p.add_argument("--literal-square", action="store_true", help="debug: integrate J(a)^2 instead of J(a)J(-a)")
    p.set_defaults(func=cmd_c6)

    p = sub.add_parser("verify", parents=[common], help="run an invariant suite")
    p.add_argument("suite", choices=["closure", "norms", "first-order", "disentangle", "eq24"])
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"ParseError: {exc}", file=sys.stderr)
        return 3
    except DomainError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
