"""Command-line entry point: ``detgb gb``, ``detgb experiment NAME`` and ``detgb render``.

Exit codes: 0 confirmed, 1 refuted, 2 incomplete, 64 usage error, 70 internal error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import experiments as ex
from .determinantal import minors_ideal
from .errors import SchemaMismatch, UsageError
from .groebner import buchberger, initial_ideal
from .monideal import MonomialIdeal, hilbert_function
from .poly import GF, VariableGrid, parse_field


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(ex.EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _common(p: argparse.ArgumentParser):
    p.add_argument("--grid", help="matrix shape MxN")
    p.add_argument("--minors", type=int, dest="t", help="minor size t")
    p.add_argument("--order", help="KIND[:ARGS], e.g. lex:rowmajor, grevlex:seed=3, weight:seed=7")
    p.add_argument("--field", help="q for the rationals or p=PRIME (default depends on the command)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true", help="print the JSON report instead of text")
    p.add_argument("--out", help="also write the JSON report to this path")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="detgb", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    gb = sub.add_parser("gb", help="reduced Groebner basis, initial ideal and Hilbert data of I_t")
    _common(gb)
    gb.add_argument("--hf-degree", type=int, default=6, help="Hilbert function values up to this degree")

    exp = sub.add_parser("experiment", help="run one reproducible experiment")
    exp.add_argument("name", help="one of: " + ", ".join(ex.EXPERIMENTS))
    _common(exp)
    exp.add_argument("--samples", type=int, help="number of sampled orders")
    exp.add_argument("--budget", type=float, help="time budget in seconds for searches")
    exp.add_argument("--degree", type=int, help="degree bound (rsk-bijection)")
    exp.add_argument("--workers", type=int, default=1, help="worker processes (results merged in task order)")
    exp.add_argument("--gb-timeout", type=float, help="per-Groebner-basis time limit in seconds")
    exp.add_argument("--timings", action="store_true", help="record wall-clock time (reports are then not byte-stable)")

    rend = sub.add_parser("render", help="print a JSON report as text")
    rend.add_argument("report", help="path to a report, or - for stdin")

    sub.add_parser("list", help="list experiment names")
    return parser


def _emit(report: dict, args) -> None:
    text = ex.dumps(report)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    sys.stdout.write(text if args.json else ex.render(report))


def cmd_gb(args) -> int:
    if not args.grid or not args.t:
        raise UsageError("gb needs --grid MxN and --minors T")
    m, n = ex.parse_grid(args.grid)
    grid = VariableGrid(m, n)
    try:
        F = parse_field(args.field) if args.field else GF()
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    order = ex.parse_order(args.order or "grevlex:rowmajor", grid)
    gens = minors_ideal(args.t, grid, grid.ring(F))
    G = buchberger(gens, order) if gens else None
    J = initial_ideal(G) if G else MonomialIdeal(grid.size, [], grid.names())
    J.names = tuple(grid.names())
    hd = hilbert_function(J, args.hf_degree)
    report = {
        "schema": ex.SCHEMA,
        "experiment": "gb",
        "spec": {"grid": f"{m}x{n}", "t": args.t, "order": args.order or "grevlex:rowmajor", "field": repr(F), "seed": args.seed},
        "claim": f"reduced Groebner basis of I_{args.t} on the {m}x{n} grid",
        "parameters": {"m": m, "n": n, "t": args.t},
        "field": repr(F),
        "orders_checked": [order.describe()],
        "mode": "single order",
        "outcome": True,
        "status": ex.CONFIRMED,
        "details": {
            "basis_size": len(G.elements) if G else 0,
            "basis": [str(f) for f in G.elements] if G else [],
            "initial_ideal": J.to_strings(),
            "initial_squarefree": J.is_squarefree(),
            "hilbert_numerator": list(hd.numerator),
            "hilbert_function": list(hd.values),
            "dimension": hd.dimension,
            "degree": hd.degree,
            "h_vector": list(hd.h_vector),
        },
        "timings": None,
    }
    _emit(report, args)
    return 0


def cmd_experiment(args) -> int:
    for flag in ("samples", "budget", "degree", "t", "gb_timeout"):
        v = getattr(args, flag)
        if v is not None and v < 0:
            raise UsageError(f"--{flag.replace('_', '-')} must not be negative")
    spec = ex.ExperimentSpec(
        name=args.name,
        grid=ex.parse_grid(args.grid) if args.grid else None,
        t=args.t,
        field=args.field,
        seed=args.seed,
        samples=args.samples,
        budget=args.budget,
        degree=args.degree,
        order=args.order,
        workers=args.workers,
        gb_timeout=args.gb_timeout,
        timings=args.timings,
        out=args.out,
    )
    report = ex.run_experiment(spec)
    _emit(report, args)
    return ex.EXIT_CODES[report["status"]]


def cmd_render(args) -> int:
    text = sys.stdin.read() if args.report == "-" else open(args.report).read()
    try:
        report = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaMismatch(f"not JSON: {exc}") from None
    sys.stdout.write(ex.render(report))
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "gb":
            return cmd_gb(args)
        if args.command == "experiment":
            return cmd_experiment(args)
        if args.command == "render":
            return cmd_render(args)
        if args.command == "list":
            print("\n".join(ex.EXPERIMENTS))
            return 0
        parser.print_help(sys.stderr)
        return ex.EXIT_USAGE
    except (UsageError, SchemaMismatch) as exc:
        print(f"detgb: {exc}", file=sys.stderr)
        return ex.EXIT_USAGE
    except Exception as exc:  # a crash must not read as "refuted"
        print(f"detgb: internal error: {exc!r}", file=sys.stderr)
        return ex.EXIT_SOFTWARE


if __name__ == "__main__":
    sys.exit(main())
