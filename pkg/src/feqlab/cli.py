"""feqlab command line.

Every invocation prints one JSON report (schema ``feqlab/1``) on stdout.
Exit status: 0 success / positive verdict, 1 clean negative verdict,
2 usage, parse or domain error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction

from .cyclotomic import DomainError
from .numeric import CATALOG, DEFAULT_TOL, GridSpec, residual_scan
from .operators import (
    SYMBOLIC,
    EquationParams,
    djokovic_rhs,
    forward_difference,
    haruki_defect,
    knw_average,
    knw_defect,
    mixed_difference,
)
from .parser import ParseError, format_poly, parse
from .spaces import INF, CornerSet, characterize, defect, downward_closure, minimal_corners

SCHEMA = "feqlab/1"

EXIT_OK, EXIT_NEGATIVE, EXIT_ERROR = 0, 1, 2

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["schema", "command", "params", "status", "exit_code"],
    "properties": {
        "schema": {"const": SCHEMA},
        "command": {"type": ["string", "null"]},
        "params": {"type": "object"},
        "status": {"enum": ["ok", "negative", "error"]},
        "exit_code": {"enum": [0, 1, 2]},
        "error": {
            "type": "object",
            "required": ["type", "message"],
            "properties": {
                "type": {"type": "string"},
                "message": {"type": "string"},
                "position": {"type": "integer"},
            },
        },
    },
    "allOf": [
        {
            "if": {"properties": {"status": {"const": "error"}}},
            "then": {"required": ["error"], "properties": {"exit_code": {"const": 2}}},
        },
        {
            "if": {"properties": {"status": {"const": "ok"}}},
            "then": {"properties": {"exit_code": {"const": 0}}},
        },
        {
            "if": {"properties": {"status": {"const": "negative"}}},
            "then": {"properties": {"exit_code": {"const": 1}}},
        },
    ],
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# -- flag value syntax ---------------------------------------------------------

def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"bad rational literal {text!r}") from exc


def parse_steps(text: str) -> list:
    """'1,0;0,1/2;sym' -> [[1, 0], [0, 1/2], SYMBOLIC]."""
    steps = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            raise DomainError(f"empty step in {text!r}")
        if chunk in ("sym", "h", SYMBOLIC):
            steps.append(SYMBOLIC)
        else:
            steps.append([parse_rational(c) for c in chunk.split(",")])
    return steps


def parse_points(text: str) -> list[tuple]:
    points = []
    for chunk in text.split(";"):
        coords = []
        for c in chunk.split(","):
            c = c.strip()
            if c.upper() in ("INF", "INFINITY"):
                coords.append(INF)
            else:
                try:
                    coords.append(int(c))
                except ValueError as exc:
                    raise DomainError(f"bad tuple coordinate {c!r}") from exc
        points.append(tuple(coords))
    return points


def parse_grid(text: str) -> GridSpec:
    parts = text.split(",")
    if len(parts) != 3:
        raise DomainError("grid must be min,max,count")
    try:
        return GridSpec(float(parts[0]), float(parts[1]), int(parts[2]))
    except ValueError as exc:
        raise DomainError(f"bad grid {text!r}") from exc


def _ext(v):
    return "INF" if v == INF else v


def _positive(name: str, value):
    if value is None or value < 1:
        raise DomainError(f"--{name} must be a positive integer")
    return value


# -- subcommands -----------------------------------------------------------------

def _cmd_check(a):
    _positive("N", a.N)
    _positive("d", a.d)
    regime = "real" if a.equation == "frechet" else "complex"
    f = parse(a.expr, regime, a.d if regime == "real" else None)
    residue = defect(a.equation, f, a.N, a.d)
    member = residue.is_zero()
    return {"member": member, "defect": format_poly(residue)}, member


def _cmd_expand(a):
    op = a.operator
    if op in ("knw-average", "haruki-defect", "knw-defect"):
        params = EquationParams(_positive("N", a.N))
        f = parse(a.expr, "complex")
        fn = {"knw-average": knw_average, "haruki-defect": haruki_defect, "knw-defect": knw_defect}[op]
        return {"result": format_poly(fn(f, params))}, True
    steps = parse_steps(a.steps) if a.steps else None
    d = a.d
    if d is None and steps:
        d = next((len(s) for s in steps if s != SYMBOLIC), None)
    f = parse(a.expr, "real", d)
    if op == "forward-diff":
        _positive("N", a.N)
        if steps and len(steps) != 1:
            raise DomainError("forward-diff takes a single step vector")
        result = forward_difference(f, a.N, steps[0] if steps else SYMBOLIC, d)
    elif op == "mixed-diff":
        if steps is None:
            steps = [SYMBOLIC] * _positive("N", a.N)
        result = mixed_difference(f, steps, d)
    else:
        if not steps:
            raise DomainError("djokovic-rhs requires --steps")
        result = djokovic_rhs(f, steps)
    return {"result": format_poly(result)}, True


def _cmd_verify(a):
    _positive("N", a.N)
    _positive("d", a.d)
    report = characterize(a.equation, a.N, a.d, a.max_degree)
    payload = report.to_dict()
    payload["equation_params"] = payload.pop("params")
    payload["disagreements"] = [list(x) for x in report.disagreements()]
    return payload, report.agreement


def _cmd_djokovic(a):
    steps = parse_steps(a.steps)
    if any(s == SYMBOLIC for s in steps):
        raise DomainError("djokovic requires concrete rational steps")
    d = len(steps[0])
    f = parse(a.expr, "real", d)
    lhs = mixed_difference(f, steps, d)
    rhs = djokovic_rhs(f, steps)
    holds = lhs == rhs
    return {"holds": holds, "lhs": format_poly(lhs), "rhs": format_poly(rhs)}, holds


def _cmd_corners(a):
    points = parse_points(a.points)
    if a.action == "close":
        cap = [int(c) for c in a.cap.split(",")] if a.cap else None
        closure = downward_closure(CornerSet.from_points(points), cap)
        return {"points": [list(p) for p in sorted(closure)], "count": len(closure)}, True
    if any(INF in p for p in points):
        raise DomainError("minimal expects finite tuples")
    cs = minimal_corners(points)
    return {"corners": [[_ext(v) for v in c] for c in cs.sorted_corners()]}, True


def _cmd_scan(a):
    _positive("N", a.N)
    _positive("d", a.d)
    if (a.expr is None) == (a.builtin is None):
        raise UsageError("scan needs exactly one of --expr or --builtin")
    if a.builtin is not None:
        if a.equation == "frechet":
            raise DomainError("built-in functions are complex functions; use --expr for frechet")
        f = CATALOG[a.builtin]
    else:
        f = parse(a.expr, "real" if a.equation == "frechet" else "complex", a.d if a.equation == "frechet" else None)
    grid = parse_grid(a.grid) if a.grid else GridSpec()
    if a.tol <= 0:
        raise DomainError("--tol must be positive")
    report = residual_scan(f, a.equation, a.N, grid, a.d, a.tol)
    payload = report.to_dict()
    payload["equation_params"] = payload.pop("params")
    if not math.isfinite(payload["max_abs_residual"]):
        payload["max_abs_residual"] = None
    payload["solves"] = report.solves
    return payload, report.solves


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--pretty", action="store_true", help="human summary on stderr")
    p = _Parser(prog="feqlab", description="Exact verification of mean-value and difference functional equations.",
                parents=[common])
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    c = sub.add_parser("check", parents=[common], help="exact membership of a polynomial")
    c.add_argument("--equation", required=True, choices=["knw", "haruki", "frechet"])
    c.add_argument("--N", type=int, required=True)
    c.add_argument("--d", type=int, default=1)
    c.add_argument("--expr", required=True)

    e = sub.add_parser("expand", parents=[common], help="expand an operator applied to a polynomial")
    e.add_argument("--operator", required=True,
                   choices=["knw-average", "haruki-defect", "knw-defect", "forward-diff", "mixed-diff", "djokovic-rhs"])
    e.add_argument("--N", type=int)
    e.add_argument("--d", type=int)
    e.add_argument("--steps")
    e.add_argument("--expr", required=True)

    v = sub.add_parser("verify", parents=[common], help="sweep monomials against the characterization")
    v.add_argument("--equation", required=True, choices=["knw", "haruki", "frechet"])
    v.add_argument("--N", type=int, required=True)
    v.add_argument("--d", type=int, default=1)
    v.add_argument("--max-degree", type=int, required=True)

    j = sub.add_parser("djokovic", parents=[common], help="check the mixed-difference identity")
    j.add_argument("--expr", required=True)
    j.add_argument("--steps", required=True)

    k = sub.add_parser("corners", parents=[common], help="corner-set utilities")
    k.add_argument("action", choices=["close", "minimal"])
    k.add_argument("--points", required=True)
    k.add_argument("--cap")

    s = sub.add_parser("scan", parents=[common], help="numeric residual scan")
    s.add_argument("--equation", required=True, choices=["knw", "haruki", "nagumo", "frechet"])
    s.add_argument("--N", type=int, required=True)
    s.add_argument("--d", type=int, default=1)
    s.add_argument("--expr")
    s.add_argument("--builtin", choices=sorted(CATALOG))
    s.add_argument("--grid")
    s.add_argument("--tol", type=float, default=DEFAULT_TOL)
    return p


_HANDLERS = {
    "check": _cmd_check,
    "expand": _cmd_expand,
    "verify": _cmd_verify,
    "djokovic": _cmd_djokovic,
    "corners": _cmd_corners,
    "scan": _cmd_scan,
}


def _params(args) -> dict:
    skip = {"command", "pretty"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip and v is not None}


_VALUE_FLAGS = {"--grid", "--expr", "--steps", "--points"}


def _attach_values(argv: list[str]) -> list[str]:
    # argparse mistakes values like "-1,1,5" or "-z" for flags; glue them to their option
    out = []
    it = iter(argv)
    for tok in it:
        if tok in _VALUE_FLAGS:
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def run(argv: list[str]) -> tuple[dict, int]:
    """Execute one command; returns the JSON-ready report and the exit code."""
    report = {"schema": SCHEMA, "command": argv[0] if argv else None, "params": {}}
    try:
        args = build_parser().parse_args(_attach_values(argv))
        if args.command is None:
            raise UsageError("a subcommand is required")
        report["command"] = args.command
        report["params"] = _params(args)
        payload, positive = _HANDLERS[args.command](args)
        report.update(payload)
        code = EXIT_OK if positive else EXIT_NEGATIVE
        report["status"] = "ok" if positive else "negative"
    except (UsageError, DomainError, ZeroDivisionError) as exc:
        err = {"type": type(exc).__name__, "message": str(exc)}
        if isinstance(exc, ParseError):
            err["position"] = exc.position
        report["status"] = "error"
        report["error"] = err
        code = EXIT_ERROR
    report["exit_code"] = code
    return report, code


def _summary(report: dict) -> str:
    if report["status"] == "error":
        return f"error: {report['error']['message']}"
    keys = ("member", "holds", "agreement", "solves", "result", "defect", "max_abs_residual", "witness", "corners", "count")
    bits = [f"{k}={report[k]}" for k in keys if k in report]
    return f"{report['command']}: {report['status']} " + " ".join(bits)


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    report, code = run(argv)
    print(json.dumps(report, sort_keys=True))
    if "--pretty" in argv:
        print(_summary(report), file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
