"""Command-line front end: ``hopfwick SUBCOMMAND ...``.

Exit status is 0 on success, 1 on domain errors (error name on stderr)
and 2 on usage errors.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import config
from .dsl import format_monomial, format_poly, format_scalar, parse
from .errors import HopfWickError
from .fields import FieldPoly, Monomial
from .hopf import coproduct
from .laplace import DEFAULT_REGISTRY, KernelRegistry, laplace_pair
from .numeric import KernelTable, eval_poly, load_times
from .quantize import StarContext, star_power, vacuum
from .serialize import coproduct_to_json, poly_from_json, poly_to_json, scalar_to_json
from .timeorder import causal_check, green, tproduct


def _common_options(parser: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--dim", type=int, default=d(config.DEFAULT_DIM), help="spacetime dimension (default 4)")
    parser.add_argument("--format", choices=("text", "json"), default=d("text"))
    parser.add_argument("--registry", metavar="FILE", default=d(None), help="kernel registry JSON")
    parser.add_argument("--allow-diagonal", action="store_true", default=d(False),
                        help="emit formal diagonal symbols instead of rejecting same-point contractions")
    parser.add_argument("--from-json", action="store_true", default=d(False),
                        help="read each EXPR argument as a JSON file ('-' for stdin)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hopfwick", description="Hopf-algebraic Wick calculus on field polynomials.")
    _common_options(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help):
        p = sub.add_parser(name, help=help)
        _common_options(p, suppress=True)
        return p

    add("show", help="print the canonical form of an expression").add_argument("expr")
    add("coproduct", help="normalized coproduct").add_argument("expr")
    p = add("pair", help="Laplace pairing (EXPR1|EXPR2)")
    p.add_argument("expr1")
    p.add_argument("expr2")
    p = add("star", help="star product EXPR1 * EXPR2 * ...")
    p.add_argument("exprs", nargs="+")
    p = add("vacuum", help="vacuum expectation of the star product of the arguments")
    p.add_argument("exprs", nargs="+")
    p = add("tproduct", help="Wick expansion of the time-ordered product")
    p.add_argument("expr")
    p.add_argument("--local-vertices", action="store_true", help="no contractions between factors at one point")
    p = add("green", help="Green function of generators at distinct points")
    p.add_argument("gens", nargs="*", help="single-generator expressions, e.g. phi@1")
    p.add_argument("--points", type=int, help="use phi@1 ... phi@N")
    p = add("causal-check", help="numeric check of T(cd) = T(c) * T(d)")
    p.add_argument("expr_c")
    p.add_argument("expr_d")
    p.add_argument("--times", required=True, metavar="FILE")
    p.add_argument("--kernels", required=True, metavar="FILE")
    p.add_argument("--tol", type=float, default=1e-9)
    p = add("eval", help="evaluate coefficients with a kernel table")
    p.add_argument("expr")
    p.add_argument("--kernels", required=True, metavar="FILE")
    return parser


def _complex(v: complex) -> str:
    return f"{v.real:.17g}{v.imag:+.17g}j"


class _Session:
    def __init__(self, args):
        self.args = args
        reg = KernelRegistry.load(args.registry) if args.registry else DEFAULT_REGISTRY
        if args.allow_diagonal:
            reg = reg.with_diagonal(True)
        self.ctx = StarContext.from_registry(reg)

    def expr(self, text: str) -> FieldPoly:
        if self.args.from_json:
            if text == "-":
                obj = json.load(sys.stdin)
            else:
                with open(text) as f:
                    obj = json.load(f)
            return poly_from_json(obj.get("result", obj))
        return parse(text, self.args.dim, allow_diagonal=self.ctx.diagonal_policy == "formal")

    def emit_poly(self, p: FieldPoly) -> str:
        if self.args.format == "json":
            return json.dumps({"result": poly_to_json(p), "context": self.ctx.describe()}, sort_keys=True)
        return format_poly(p)

    def emit_scalar(self, s) -> str:
        if self.args.format == "json":
            return json.dumps({"result": poly_to_json(FieldPoly.const(s)), "scalar": scalar_to_json(s),
                               "context": self.ctx.describe()}, sort_keys=True)
        return format_scalar(s)


def run(args) -> tuple[int, str]:
    s = _Session(args)
    cmd = args.command
    if cmd == "show":
        return 0, s.emit_poly(s.expr(args.expr))
    if cmd == "coproduct":
        pairs = coproduct(s.expr(args.expr))
        if args.format == "json":
            return 0, json.dumps(coproduct_to_json(pairs), sort_keys=True)
        lines = []
        for tp in pairs:
            legs = f"{format_monomial(tp.left)} (x) {format_monomial(tp.right)}"
            coeff = format_scalar(tp.coeff)
            if len(tp.coeff) > 1:
                coeff = f"({coeff})"
            lines.append(legs if tp.coeff == 1 else f"{coeff} * {legs}")
        return 0, "\n".join(lines) if lines else "0"
    if cmd == "pair":
        return 0, s.emit_scalar(laplace_pair(s.expr(args.expr1), s.expr(args.expr2), s.ctx.pairing))
    if cmd == "star":
        return 0, s.emit_poly(star_power([s.expr(e) for e in args.exprs], s.ctx))
    if cmd == "vacuum":
        return 0, s.emit_scalar(vacuum(star_power([s.expr(e) for e in args.exprs], s.ctx)))
    if cmd == "tproduct":
        return 0, s.emit_poly(tproduct(s.expr(args.expr), s.ctx, local_vertices=args.local_vertices))
    if cmd == "green":
        if args.points is not None and args.gens:
            raise _Usage("give either generators or --points, not both")
        if args.points is not None:
            if args.points < 0:
                raise _Usage("--points must be >= 0")
            gens = list(range(1, args.points + 1))
        else:
            gens = []
            for text in args.gens:
                p = s.expr(text)
                (m, c), = p.items() if len(p) == 1 else ((None, None),)
                if m is None or m.degree != 1 or c != 1:
                    raise _Usage(f"{text!r} is not a single generator")
                gens.append(m[0][0])
        with config.dimension(args.dim):
            return 0, s.emit_scalar(green(gens, s.ctx))
    if cmd == "causal-check":
        c, d = s.expr(args.expr_c), s.expr(args.expr_d)
        report = causal_check(c, d, load_times(args.times), KernelTable.load(args.kernels), args.tol, s.ctx)
        if args.format == "json":
            out = json.dumps(report.to_json(), sort_keys=True)
        else:
            out = "\n".join(f"{k}: {v}" for k, v in report.to_json().items())
        if report.passed:
            return 0, out
        name = "OrderViolated" if report.status == "order_violated" else "CausalCheckFailed"
        print(f"{name}: max deviation {report.max_deviation:.3e} (tol {report.tol:g})", file=sys.stderr)
        return 1, out
    if cmd == "eval":
        p = s.expr(args.expr)
        values = eval_poly(p, KernelTable.load(args.kernels))
        order = [m for m, _ in p.sorted_terms()]
        if args.format == "json":
            rows = [{"monomial": format_monomial(m), "re": values[m].real, "im": values[m].imag} for m in order]
            return 0, json.dumps({"values": rows}, sort_keys=True)
        if not order:
            return 0, "0"
        if order == [Monomial()]:
            return 0, _complex(values[order[0]])
        return 0, "\n".join(f"{format_monomial(m)}: {_complex(values[m])}" for m in order)
    raise _Usage(f"unknown command {cmd}")


class _Usage(Exception):
    pass


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    if args.dim < 1:
        print("usage error: --dim must be >= 1", file=sys.stderr)
        return 2
    try:
        with config.dimension(args.dim):
            code, out = run(args)
    except _Usage as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 2
    except HopfWickError as e:
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return 1
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as e:
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return 1
    print(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
