"""``adc``: evaluate and differentiate expressions from the command line.

Exit codes: 0 success, 2 parse error, 3 missing binding, 4 capability
error (for example ``sin`` with integer scalars), 5 bad benchmark input.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .ad.higher import forward_2nd, hessian_vector, stream_all, take_path
from .ad.modes import MODES, run_mode
from .ad.symbolic import derive
from .algebra import FLOAT, INT, RATIONAL, UnsupportedPrimitive
from .evaluate import evaluate
from .expr import free_vars, simplify_basic
from .oracle import CSV_HEADER, FAMILIES, brute_force_grad, profile_mode, scaling_check
from .syntax import ParseError, parse, pretty

SCALARS = {"i64": INT, "rational": RATIONAL, "f64": FLOAT}
EXIT_PARSE, EXIT_BINDING, EXIT_CAPABILITY, EXIT_BENCH = 2, 3, 4, 5


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


# -- values --------------------------------------------------------------------

def parse_value(text: str, scalar: str):
    text = text.strip()
    try:
        if scalar == "i64":
            return int(text)
        if scalar == "rational":
            return Fraction(text)
        return float(text)
    except (ValueError, ZeroDivisionError):
        raise CliError(f"cannot read {text!r} as a {scalar} value", EXIT_PARSE) from None


def parse_bindings(text: str | None, scalar: str) -> dict[str, object]:
    """``name=value[,name=value]*``."""
    out: dict[str, object] = {}
    if not text:
        return out
    for item in text.split(","):
        name, sep, value = item.partition("=")
        name = name.strip()
        if not sep or not name:
            raise CliError(f"bad binding {item!r}; expected name=value", EXIT_PARSE)
        out[name] = parse_value(value, scalar)
    return out


def format_value(v) -> str:
    if isinstance(v, bool):
        return str(int(v))
    if isinstance(v, float):
        return f"{v:.17g}"
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    return str(v)


def _json_value(v) -> str:
    # numbers stay JSON numbers; non-integral rationals become strings
    if isinstance(v, Fraction) and v.denominator != 1:
        return json.dumps(format_value(v))
    return format_value(v)


def _json_object(pairs) -> str:
    return "{" + ",".join(f"{json.dumps(k)}:{v}" for k, v in pairs) + "}"


# -- requests ----------------------------------------------------------------------

class Problem:
    """A parsed expression with its registry, valuation and scalars."""

    def __init__(self, args, need_point: bool = True):
        try:
            self.expr, self.registry = parse(args.expr)
        except ParseError as exc:
            raise CliError(f"parse error: {exc}", EXIT_PARSE) from None
        self.scalar = SCALARS[args.scalar]
        point = parse_bindings(args.point, args.scalar)
        self.free = sorted(free_vars(self.expr), key=self.registry.name_of)
        self.arity = len(self.registry)
        if need_point:
            missing = [self.registry.name_of(v) for v in self.free
                       if self.registry.name_of(v) not in point]
            if missing:
                raise CliError(f"missing binding for {', '.join(missing)}", EXIT_BINDING)
        zero = self.scalar.zero
        self.valuation = [point.get(n, zero) for n in self.registry.names]

    def var_id(self, name: str) -> int:
        if name not in self.registry:
            raise CliError(f"unknown variable {name!r}", EXIT_BINDING)
        return self.registry.lookup(name)

    def named(self, values: dict) -> list[tuple[str, object]]:
        """Free variables by name with their entries (zero when absent)."""
        zero = self.scalar.zero
        return [(self.registry.name_of(v), values.get(v, zero)) for v in self.free]


def cmd_eval(args) -> str:
    p = Problem(args)
    value = evaluate(p.scalar, p.valuation, p.expr)
    if args.format == "json":
        return _json_object([("value", _json_value(value))])
    return f"value = {format_value(value)}"


def cmd_grad(args) -> str:
    p = Problem(args)
    if args.mode == "symbolic":
        value = evaluate(p.scalar, p.valuation, p.expr)
        grad = brute_force_grad(p.valuation, p.expr, p.scalar)
    else:
        result = run_mode(args.mode, p.scalar, p.arity, p.valuation, p.expr)
        value, grad = result.value, result.gradient()
    if args.format == "json":
        entries = sorted((n, d) for n, d in p.named(grad) if not p.scalar.is_zero(d))
        gradient = _json_object((n, _json_value(d)) for n, d in entries)
        return _json_object([("value", _json_value(value)), ("gradient", gradient)])
    lines = [f"value = {format_value(value)}"]
    lines += [f"d/d{n} = {format_value(d)}" for n, d in sorted(p.named(grad))]
    return "\n".join(lines)


def cmd_derive(args) -> str:
    p = Problem(args, need_point=False)
    if not args.var:
        raise CliError("derive needs --var", EXIT_BINDING)
    d = derive(p.var_id(args.var), p.expr)
    if not args.raw:
        d = simplify_basic(d)
    text = pretty(d, p.registry)
    if args.format == "json":
        return _json_object([("derivative", json.dumps(text))])
    return text


def cmd_higher(args) -> str:
    p = Problem(args)
    if not args.var:
        raise CliError("higher needs --var", EXIT_BINDING)
    names = [n.strip() for n in args.var.split(",") if n.strip()]
    ids = [p.var_id(n) for n in names]
    if len(ids) == 1:
        if args.depth < 0:
            raise CliError("depth must be nonnegative", EXIT_PARSE)
        path = ids * args.depth
    else:
        path = ids
    values = take_path(stream_all(p.scalar, p.valuation, p.expr), path)
    if args.format == "json":
        listing = "[" + ",".join(_json_value(v) for v in values) + "]"
        return _json_object([("path", json.dumps([p.registry.name_of(i) for i in path],
                                                 separators=(",", ":"))),
                             ("derivatives", listing)])
    return " ".join(format_value(v) for v in values)


def cmd_hvp(args) -> str:
    p = Problem(args)
    direction = parse_bindings(args.dir, args.scalar)
    for name in direction:
        p.var_id(name)
    zero = p.scalar.zero
    v = [direction.get(n, zero) for n in p.registry.names]
    hv = hessian_vector(p.scalar, p.arity, p.valuation, p.expr, v)
    by_id = dict(enumerate(hv))
    if args.format == "json":
        entries = _json_object((n, _json_value(d)) for n, d in sorted(p.named(by_id)))
        return _json_object([("hvp", entries)])
    return "\n".join(f"(Hv)_{n} = {format_value(d)}" for n, d in sorted(p.named(by_id)))


def cmd_hessian(args) -> str:
    p = Problem(args)
    so = forward_2nd(p.scalar, p.arity, p.valuation, p.expr)
    hess = so.hessian
    return "\n".join(" ".join(format_value(hess[i][j]) for j in p.free) for i in p.free)


def parse_sizes(text: str | None, per_var: int) -> list[tuple[int, int]]:
    """``V,V,...`` (with N = per_var·V) or ``N:V,N:V,...``."""
    if not text or not text.strip():
        raise CliError("no size points given", EXIT_BENCH)
    out = []
    for item in text.split(","):
        item = item.strip()
        try:
            if ":" in item:
                n, v = (int(x) for x in item.split(":", 1))
            else:
                v = int(item)
                n = per_var * v
        except ValueError:
            raise CliError(f"bad size point {item!r}", EXIT_BENCH) from None
        if n < 1 or v < 1:
            raise CliError(f"size point {item!r} must be positive", EXIT_BENCH)
        out.append((n, v))
    return out


def cmd_bench(args) -> str:
    if args.family not in FAMILIES:
        raise CliError(f"unknown family {args.family!r}; expected one of {', '.join(FAMILIES)}",
                       EXIT_BENCH)
    if args.mode not in MODES + ("symbolic",):
        raise CliError(f"unknown mode {args.mode!r}", EXIT_BENCH)
    sizes = parse_sizes(args.sizes, args.nodes_per_var)
    rows = [CSV_HEADER] + [profile_mode(args.mode, args.family, n, v).csv_row() for n, v in sizes]
    if args.fit:
        if len(sizes) < 4:
            raise CliError("fitting needs at least 4 size points", EXIT_BENCH)
        verdict = scaling_check(args.mode, args.family, sizes)
        print(f"best fit: {verdict.best} (expected {verdict.expected}, "
              f"{'pass' if verdict.passed else 'fail'})", file=sys.stderr)
    return "\n".join(rows)


# -- entry point -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="adc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def problem(name, help_text, modes=None):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("-e", "--expr", required=True, help="expression text")
        p.add_argument("-p", "--point", help="bindings name=value[,name=value]*")
        p.add_argument("--scalar", choices=sorted(SCALARS), default="i64")
        p.add_argument("--format", choices=("text", "json"), default="text")
        if modes:
            p.add_argument("--mode", choices=modes, default="reverse")
        return p

    problem("eval", "evaluate an expression")
    problem("grad", "value and gradient", MODES + ("symbolic",))
    d = problem("derive", "symbolic partial derivative")
    d.add_argument("--var", required=True)
    d.add_argument("--raw", action="store_true", help="skip identity/annihilator cleanup")
    h = problem("higher", "successive partial derivatives")
    h.add_argument("--var", required=True, help="a variable, or a comma list as a path")
    h.add_argument("--depth", type=int, default=2)
    v = problem("hvp", "Hessian-vector product")
    v.add_argument("--dir", required=True, help="direction name=value[,name=value]*")
    problem("hessian", "full Hessian over the free variables")

    b = sub.add_parser("bench", help="operation-count profile as CSV")
    b.add_argument("--family", required=True)
    b.add_argument("--mode", default="reverse-mut")
    b.add_argument("--sizes", default="", help="V,V,... or N:V,N:V,...")
    b.add_argument("--nodes-per-var", type=int, default=8)
    b.add_argument("--fit", action="store_true", help="report the best-fit growth law")
    return parser


COMMANDS = {
    "eval": cmd_eval, "grad": cmd_grad, "derive": cmd_derive, "higher": cmd_higher,
    "hvp": cmd_hvp, "hessian": cmd_hessian, "bench": cmd_bench,
}


def run(argv: list[str]) -> tuple[str, int]:
    """Run one request; returns (standard output text, exit code)."""
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args), 0
    except CliError as exc:
        print(f"adc: {exc}", file=sys.stderr)
        return "", exc.code
    except UnsupportedPrimitive as exc:
        print(f"adc: {exc}", file=sys.stderr)
        return "", EXIT_CAPABILITY


def main(argv: list[str] | None = None) -> int:
    out, code = run(sys.argv[1:] if argv is None else argv)
    if out:
        print(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
