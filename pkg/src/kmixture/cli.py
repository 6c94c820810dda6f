"""Command-line front end: ``kmixture <subcommand> ...``.

Exit status is 0 on success, 1 on a domain error (one ``kmixture: <kind>: ...``
line on stderr) and 2 on a usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .analytic import (
    compare_k_and_d,
    k_optimal_first_order,
    k_optimal_second_order,
    weight_table,
    weight_table_csv,
    weight_table_text,
)
from .basis import Order, ScheffeBasis
from .designs import ComponentBounds, Design
from .errors import DesignFormatError, KMixtureError
from .metrics import evaluate_design
from .optimize import Criterion, OptimizeSpec, optimize_weights
from .simplex import Direction, simplex_centroid, simplex_lattice, transform_design


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as err:
        raise DesignFormatError(f"cannot read {path}: {err.strerror}") from err


def _dumps(data: dict) -> str:
    """One top-level key per line; values (points, weight lists) stay on a single line."""
    body = ",\n".join(f"  {json.dumps(k)}: {json.dumps(v)}" for k, v in data.items())
    return "{\n" + body + "\n}\n"


def _emit_design(design: Design, fmt: str) -> str:
    if fmt == "csv":
        return design.to_csv()
    return _dumps(design.to_dict())


def cmd_lattice(args) -> str:
    return _emit_design(Design.uniform(simplex_lattice(args.q, args.m)), args.format)


def cmd_centroid(args) -> str:
    return _emit_design(Design.uniform(simplex_centroid(args.q)), args.format)


def cmd_koptimal(args) -> str:
    design = k_optimal_first_order(args.q) if args.order == 1 else k_optimal_second_order(args.q)
    return _emit_design(design, args.format)


def cmd_evaluate(args) -> str:
    design = Design.from_json(_read(args.design))
    report = evaluate_design(design, ScheffeBasis(design.q, Order(args.order)))
    return _dumps(report.to_dict())


def cmd_optimize(args) -> str:
    support = Design.from_json(_read(args.support)).points
    spec = OptimizeSpec(
        criterion=Criterion(args.criterion),
        support=support,
        basis=ScheffeBasis(support.shape[1], Order(args.order)),
        tolerance=args.tol,
        multistarts=args.multistarts,
        seed=args.seed,
        symmetry_reduction=not args.no_symmetry,
        threads=args.threads,
    )
    result = optimize_weights(spec)
    return _dumps(result.to_dict(support))


def cmd_efficiency(args) -> str:
    return _dumps(compare_k_and_d(args.q).to_dict())


def cmd_transform(args) -> str:
    design = Design.from_json(_read(args.design))
    bounds = ComponentBounds.from_json(_read(args.bounds), design.q)
    return _emit_design(transform_design(design, bounds, Direction(args.direction)), "json")


def cmd_table(args) -> str:
    rows = weight_table(args.qmax)
    return weight_table_csv(rows) if args.format == "csv" else weight_table_text(rows)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kmixture",
        description="K-optimal designs for first- and second-order Scheffe mixture models.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--threads", type=int, default=1, help="worker threads for optimizer multistarts")
    parser.add_argument("-o", "--output", default="-", help="output file (default: stdout)")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def order_arg(p):
        p.add_argument("--order", type=int, choices=(1, 2), required=True, help="Scheffe model order")

    p = sub.add_parser("lattice", help="{q,m} simplex-lattice points (uniform weights)")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("centroid", help="simplex-centroid points (uniform weights)")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_centroid)

    p = sub.add_parser("koptimal", help="closed-form K-optimal design")
    order_arg(p)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_koptimal)

    p = sub.add_parser("evaluate", help="eigenvalues, condition number and log det of a design")
    p.add_argument("--design", required=True, help="design JSON path, or - for stdin")
    order_arg(p)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("optimize", help="optimize weights on a fixed support")
    p.add_argument("--support", required=True, help="design JSON path (weights ignored), or - for stdin")
    order_arg(p)
    p.add_argument("--criterion", choices=("k", "d"), required=True)
    p.add_argument("--multistarts", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--no-symmetry", action="store_true", help="optimize every weight separately")
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("efficiency", help="D/K efficiencies of the K-optimal vs equal-weight {q,2} lattice")
    p.add_argument("--q", type=int, required=True)
    p.set_defaults(func=cmd_efficiency)

    p = sub.add_parser("transform", help="map a design to or from pseudo-components")
    p.add_argument("--design", required=True)
    p.add_argument("--bounds", required=True, help='JSON {"lower": [...], "upper": [...]}')
    p.add_argument("--direction", required=True, choices=[d.value for d in Direction])
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("table", help="K-optimal second-order weights for q = 3..qmax")
    p.add_argument("--qmax", type=int, required=True)
    p.add_argument("--format", choices=("text", "csv"), default="text")
    p.set_defaults(func=cmd_table)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads < 1:
        parser.error("--threads must be >= 1")
    try:
        text = args.func(args)
    except KMixtureError as err:
        print(f"kmixture: {err.prefix}: {err}", file=sys.stderr)
        return 1
    if args.output == "-":
        sys.stdout.write(text)
    else:
        Path(args.output).write_text(text, encoding="utf-8")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
