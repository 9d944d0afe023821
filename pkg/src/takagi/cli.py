"""Command line interface: ``takagi <command> [args] [flags]``.

Every command except ``graph`` prints one JSON object on stdout:
``{"command", "inputs", "output", "certificates", "exit_code"}``.  Rationals
are always strings ``"p/q"``.  A one-line summary goes to stderr.

Exit codes: 0 success, 2 domain error or bad arguments, 3 budget exhausted
with a partial result.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Any, Optional, Sequence

from .arith import DomainError, format_rational, parse_rational
from .engine import (
    DEFAULT_BUDGET,
    Kind,
    cardinality,
    construct_witness,
    enumerate_level_set,
)
from .evaluate import takagi, takagi_partial
from .expansion import alternative_expansions, canonical_expansion
from .humps import HumpFilter, enumerate_humps, humps_to_csv, s2_measure_bounds
from .oracle import level_set_cover

EXIT_OK = 0
EXIT_DOMAIN = 2
EXIT_PARTIAL = 3

DEFAULT_ORACLE_DEPTH = 30
DEFAULT_SOLVE_DEPTH = 2
DEFAULT_GRAPH_DEPTH = 10
DEFAULT_MAX_K = 40
DEFAULT_MAX_ORDER = 12
DEFAULT_MAX_TERMS = 64

_KIND_NAMES = {Kind.EXACT: "Exact", Kind.INFINITE: "Infinite", Kind.AT_LEAST: "AtLeast"}


class _Result:
    def __init__(self, command: str, inputs: dict):
        self.command = command
        self.inputs = inputs
        self.output: Any = None
        self.certificates: list[str] = []
        self.exit_code = EXIT_OK
        self.summary = ""

    def emit(self) -> int:
        payload = {
            "command": self.command,
            "inputs": self.inputs,
            "output": self.output,
            "certificates": self.certificates,
            "exit_code": self.exit_code,
        }
        sys.stdout.write(json.dumps(payload) + "\n")
        if self.summary:
            print(self.summary, file=sys.stderr)
        return self.exit_code


def _rational(text: str) -> Fraction:
    return parse_rational(text)


def cmd_eval(args: argparse.Namespace, res: _Result) -> None:
    x = _rational(args.x)
    value = takagi(x)
    res.output = {"x": format_rational(x), "value": format_rational(value)}
    if args.partial_k is not None:
        part = takagi_partial(x, args.partial_k)
        res.output["partial"] = {"k": part.k, "value": format_rational(part.value), "slope": part.slope}
    res.summary = f"T({x}) = {value}"


def cmd_expand(args: argparse.Namespace, res: _Result) -> None:
    y = _rational(args.y)
    e = canonical_expansion(y, args.max_terms)
    res.output = {"y": format_rational(y), "expansion": str(e), "tail": e.tail.value}
    res.summary = f"{y} = {e}"


def cmd_solve(args: argparse.Namespace, res: _Result) -> None:
    y = _rational(args.y)
    if args.all:
        found = alternative_expansions(y, args.depth, args.max_terms)
    else:
        e = canonical_expansion(y, args.max_terms)
        found = alternative_expansions(y, 0, args.max_terms) if e.exact else []
        if not e.exact:
            res.output = {"y": format_rational(y), "solutions": [], "canonical": str(e)}
            res.exit_code = EXIT_PARTIAL
            res.summary = f"canonical expansion of {y} is truncated; no exact solution"
            return
    solutions = []
    for alt in found:
        entry = {"expansion": str(alt.expansion), "tail": alt.expansion.tail.value, "rewrites": alt.rewrites}
        if alt.abscissa is not None:
            entry["x"] = format_rational(alt.abscissa)
            entry["verified"] = takagi(alt.abscissa) == y
        else:
            res.exit_code = EXIT_PARTIAL
        solutions.append(entry)
    res.output = {"y": format_rational(y), "solutions": solutions}
    res.summary = f"{len(solutions)} expansion(s) of {y}"


def cmd_cardinality(args: argparse.Namespace, res: _Result) -> None:
    y = _rational(args.y)
    r = cardinality(y, args.budget)
    res.output = {"y": format_rational(y), "kind": _KIND_NAMES[r.kind], "count": r.count}
    res.certificates = [c for c in r.certificate.split("; ") if c]
    if r.kind is Kind.AT_LEAST:
        res.exit_code = EXIT_PARTIAL
    res.summary = f"|L({y})| = {r}"


def cmd_levelset(args: argparse.Namespace, res: _Result) -> None:
    y = _rational(args.y)
    if args.oracle:
        cover = level_set_cover(y, args.depth)
        res.output = cover.to_dict()
        if cover.non_terminating:
            res.certificates = ["non-terminating refinement"]
        res.summary = f"{len(cover.clusters)} cluster(s) at depth {cover.depth}"
        return
    enum = enumerate_level_set(y, args.budget, args.max_terms)
    res.output = {
        "y": format_rational(y),
        "points": [format_rational(x) for x in enum.points],
        "complete": enum.complete,
    }
    if not enum.complete:
        res.exit_code = EXIT_PARTIAL
    res.summary = f"{len(enum.points)} point(s) in L({y})" + ("" if enum.complete else " (incomplete)")


def cmd_humps(args: argparse.Namespace, res: _Result) -> Optional[int]:
    humps = enumerate_humps(args.max_order, args.filter)
    if args.csv:
        sys.stdout.write(humps_to_csv(humps))
        print(f"{len(humps)} hump(s)", file=sys.stderr)
        return EXIT_OK
    res.output = {"count": len(humps), "humps": [h.to_dict() for h in humps]}
    res.summary = f"{len(humps)} hump(s)"
    return None


def cmd_measure(args: argparse.Namespace, res: _Result) -> None:
    b = s2_measure_bounds(args.depth_n, args.max_k)
    res.output = b.to_dict()
    res.certificates = ["listed removed intervals", "omitted total diameter"]
    res.summary = f"{float(b.lower):.6f} <= lambda(S_2) <= {float(b.upper):.6f}"


def cmd_witness(args: argparse.Namespace, res: _Result) -> None:
    w = construct_witness(args.n, args.budget)
    res.output = {
        "target_cardinality": w.target_cardinality,
        "ordinate": format_rational(w.ordinate),
        "recipe": w.recipe,
        "base_ordinate": format_rational(w.base_ordinate),
    }
    res.certificates = [c for c in w.confirmed.certificate.split("; ") if c]
    res.summary = f"|L({w.ordinate})| = {w.target_cardinality}"


def cmd_graph(args: argparse.Namespace) -> int:
    if not 0 <= args.depth <= 24:
        raise DomainError("graph depth must be in 0..24")
    scale = 1 << args.depth
    out = sys.stdout
    out.write("x_rational,x_decimal,y_rational,y_decimal\n")
    # T at i/2^m is an integer over 2^m; build level by level with the midpoint rule
    values = [0, 0]
    for _ in range(args.depth):
        nxt = []
        for a, b in zip(values, values[1:]):
            nxt += [2 * a, a + b + 1]
        nxt.append(2 * values[-1])
        values = nxt
    for i, v in enumerate(values):
        x = Fraction(i, scale)
        y = Fraction(v, scale)
        out.write(f"{format_rational(x)},{float(x)!r},{format_rational(y)},{float(y)!r}\n")
    print(f"{scale + 1} graph point(s)", file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="takagi", description="Exact level sets of the Takagi function.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("eval", help="exact T(x)")
    s.add_argument("x")
    s.add_argument("--partial-k", type=int, default=None, help="also report T_k(x) and its slope")

    s = sub.add_parser("expand", help="canonical Takagi expansion of y")
    s.add_argument("y")
    s.add_argument("--max-terms", type=int, default=DEFAULT_MAX_TERMS)

    s = sub.add_parser("solve", help="solutions of T(x) = y from Takagi expansions")
    s.add_argument("y")
    s.add_argument("--all", action="store_true", help="include alternative expansions")
    s.add_argument("--depth", type=int, default=DEFAULT_SOLVE_DEPTH, help="maximum number of rewrites")
    s.add_argument("--max-terms", type=int, default=DEFAULT_MAX_TERMS)

    s = sub.add_parser("cardinality", help="|L(y)|")
    s.add_argument("y")
    s.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    s = sub.add_parser("levelset", help="explicit level set, or its dyadic-box cover")
    s.add_argument("y")
    s.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    s.add_argument("--max-terms", type=int, default=DEFAULT_MAX_TERMS)
    s.add_argument("--oracle", action="store_true", help="use the interval oracle instead")
    s.add_argument("--depth", type=int, default=DEFAULT_ORACLE_DEPTH, help="oracle subdivision depth")

    s = sub.add_parser("humps", help="balanced dyadic rationals and their humps")
    s.add_argument("--max-order", type=int, default=DEFAULT_MAX_ORDER)
    s.add_argument("--filter", choices=[f.value for f in HumpFilter], default=HumpFilter.ALL.value)
    s.add_argument("--csv", action="store_true", help="CSV table instead of JSON")

    s = sub.add_parser("measure", help="certified bounds on the measure of S_2")
    s.add_argument("--depth-n", type=int, default=3)
    s.add_argument("--max-k", type=int, default=DEFAULT_MAX_K)

    s = sub.add_parser("witness", help="an ordinate with exactly 2n solutions")
    s.add_argument("n", type=int)
    s.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    s = sub.add_parser("graph", help="CSV of exact points (i/2^m, T(i/2^m))")
    s.add_argument("--depth", type=int, default=DEFAULT_GRAPH_DEPTH)
    return p


_COMMANDS = {
    "eval": cmd_eval,
    "expand": cmd_expand,
    "solve": cmd_solve,
    "cardinality": cmd_cardinality,
    "levelset": cmd_levelset,
    "humps": cmd_humps,
    "measure": cmd_measure,
    "witness": cmd_witness,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    inputs = {k: v for k, v in vars(args).items() if k != "command"}
    try:
        if args.command == "graph":
            return cmd_graph(args)
        res = _Result(args.command, inputs)
        code = _COMMANDS[args.command](args, res)
        if code is not None:
            return code
        return res.emit()
    except (DomainError, ArithmeticError) as exc:
        res = _Result(args.command, inputs)
        res.output = {"error": str(exc)}
        res.exit_code = EXIT_DOMAIN
        res.summary = f"error: {exc}"
        return res.emit()


if __name__ == "__main__":
    sys.exit(main())
