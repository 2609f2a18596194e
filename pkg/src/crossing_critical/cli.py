"""Command-line driver.

Exit status: 0 success/valid, 1 invalid or infeasible, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path
from typing import Any, Sequence

from .critical import (
    CrossingOracle,
    NotAboveThreshold,
    OracleInconclusive,
    assemble,
    extract_critical,
)
from .drawing import CertError, cert_from_json, cert_to_json, validate
from .family import build_family, canonical_drawing, deleted_edge_drawing
from .graph import GraphFormatError, graph_to_json, special_from_json, special_to_json
from .layout import to_svg
from .solver import Exact, SolveLimits, solve_exact

EXIT_OK, EXIT_INVALID, EXIT_USAGE = 0, 1, 2

_DURATION = re.compile(r"^\s*(\d+(?:\.\d+)?)\s*(ms|s|m|h)?\s*$")
_UNIT = {"ms": 0.001, "s": 1.0, "m": 60.0, "h": 3600.0, None: 1.0}


def duration(text: str) -> float:
    """Seconds from ``90``, ``90s``, ``1.5m``, ``250ms`` or ``1h``."""
    match = _DURATION.match(text)
    if not match:
        raise argparse.ArgumentTypeError(f"not a duration: {text!r}")
    return float(match.group(1)) * _UNIT[match.group(2)]


def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def nonnegative_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {value}")
    return value


def copies_arg(text: str) -> int | str:
    return "auto" if text == "auto" else positive_int(text)


def _read_json(path: str) -> Any:
    if path == "-":
        return json.load(sys.stdin)
    return json.loads(Path(path).read_text())


def _emit(payload: Any, out: str | None) -> None:
    text = json.dumps(payload, sort_keys=True) + "\n"
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _fail(payload: dict[str, Any]) -> int:
    sys.stdout.write(json.dumps(payload, sort_keys=True) + "\n")
    return EXIT_INVALID


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="crossing-critical",
        description="Crossing-critical graphs with a vertex of large degree.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="family graph JSON plus role sidecar")
    p.add_argument("--d", type=positive_int, required=True)
    p.add_argument("--out", help="graph JSON path (default stdout)")
    p.add_argument("--roles", help="role sidecar path (default <out>.roles.json)")

    p = sub.add_parser("cert", help="emit a drawing certificate for the family")
    p.add_argument("kind", choices=["canonical", "deleted"])
    p.add_argument("--d", type=positive_int, required=True)
    p.add_argument("--k", type=positive_int)
    p.add_argument("--out")

    p = sub.add_parser("verify", help="validate a certificate ('-' reads stdin)")
    p.add_argument("cert")

    p = sub.add_parser("draw", help="render a certificate as SVG")
    p.add_argument("cert")
    p.add_argument("--svg", required=True)

    def limits(p: argparse.ArgumentParser) -> None:
        p.add_argument("--max-k", type=nonnegative_int)
        p.add_argument("--budget", type=duration, help="e.g. 30s, 2m; mapped to a node cap")
        p.add_argument("--nodes", type=nonnegative_int)

    p = sub.add_parser("solve", help="exact crossing number of a small graph")
    p.add_argument("graph")
    limits(p)
    p.add_argument("--upper-bound", metavar="CERT", help="certificate capping the search")
    p.add_argument("--out")

    p = sub.add_parser("extract", help="k-crossing-critical subgraph")
    p.add_argument("graph")
    p.add_argument("--k", type=positive_int, required=True)
    p.add_argument("--seed", type=int, help="shuffle the deletion order")
    limits(p)
    p.add_argument("--out")

    p = sub.add_parser("assemble", help="k-critical-candidate bundle directory")
    p.add_argument("--k", type=positive_int, required=True)
    p.add_argument("--d", type=positive_int, required=True)
    p.add_argument("--copies", type=copies_arg, default="auto")
    p.add_argument("--out", required=True, help="bundle directory")
    return parser


def _limits(args: argparse.Namespace) -> SolveLimits:
    return SolveLimits(max_k=args.max_k, budget=args.budget, nodes=args.nodes)


def cmd_generate(args: argparse.Namespace) -> int:
    inst = build_family(args.d)
    _emit(special_to_json(inst.special), args.out)
    roles = args.roles
    if roles is None and args.out not in (None, "-"):
        roles = str(Path(args.out).with_suffix("")) + ".roles.json"
    if roles is not None:
        _emit(inst.sidecar(), roles)
    return EXIT_OK


def cmd_cert(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    if args.kind == "deleted":
        if args.k is None:
            parser.error("cert deleted: --k is required")
        if args.k > args.d:
            parser.error(f"--k must lie in 1..{args.d}")
    elif args.k is not None:
        parser.error("cert canonical: --k is not accepted")
    inst = build_family(args.d)
    cert = canonical_drawing(inst) if args.kind == "canonical" else deleted_edge_drawing(inst, args.k)
    _emit(cert_to_json(cert), args.out)
    return EXIT_OK


def _load_cert(path: str):
    return cert_from_json(_read_json(path))


def cmd_verify(args: argparse.Namespace) -> int:
    try:
        cert = _load_cert(args.cert)
    except GraphFormatError as exc:
        return _fail({"valid": False, "error": "schema", "path": exc.path, "detail": str(exc)})
    report = validate(cert)
    _emit(report.to_json(), None)
    return EXIT_OK if report.valid else EXIT_INVALID


def cmd_draw(args: argparse.Namespace) -> int:
    try:
        cert = _load_cert(args.cert)
        svg = to_svg(cert)
    except GraphFormatError as exc:
        return _fail({"error": "schema", "path": exc.path, "detail": str(exc)})
    except CertError as exc:
        return _fail({"error": "invalid-certificate", "detail": str(exc)})
    Path(args.svg).write_text(svg)
    return EXIT_OK


def cmd_solve(args: argparse.Namespace) -> int:
    try:
        sg = special_from_json(_read_json(args.graph))
        ub = _load_cert(args.upper_bound) if args.upper_bound else None
        outcome = solve_exact(sg, _limits(args), upper_bound=ub)
    except GraphFormatError as exc:
        return _fail({"error": "schema", "path": exc.path, "detail": str(exc)})
    except CertError as exc:
        return _fail({"error": "invalid-certificate", "detail": str(exc)})
    _emit(outcome.to_json(), args.out)
    return EXIT_OK if isinstance(outcome, Exact) else EXIT_INVALID


def cmd_extract(args: argparse.Namespace) -> int:
    try:
        sg = special_from_json(_read_json(args.graph))
    except GraphFormatError as exc:
        return _fail({"error": "schema", "path": exc.path, "detail": str(exc)})
    if sg.thick:
        return _fail({"error": "thick-edges", "detail": "extract works on graphs without thick edges"})
    oracle = CrossingOracle(_limits(args))
    try:
        h = extract_critical(sg.graph, args.k, oracle, seed=args.seed)
    except NotAboveThreshold as exc:
        return _fail({"error": "not-above-threshold", "detail": str(exc)})
    except OracleInconclusive as exc:
        return _fail({"error": "oracle-inconclusive", "edge": exc.edge, "detail": str(exc)})
    _emit(graph_to_json(h), args.out)
    return EXIT_OK


def cmd_assemble(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    if args.k < 171:
        parser.error("--k must be at least 171")
    if args.copies != "auto" and 171 * args.copies > args.k:
        parser.error(f"--copies {args.copies} needs --k >= {171 * args.copies}")
    bundle = assemble(args.k, args.d, args.copies)
    bundle.write(args.out)
    _emit(
        {
            "out": str(args.out),
            "family_copies": bundle.copies,
            "k5_copies": bundle.k5_copies,
            "certified_crossings": bundle.certified_total(),
        },
        None,
    )
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "generate":
        return cmd_generate(args)
    if args.command == "cert":
        return cmd_cert(args, parser)
    if args.command == "verify":
        return cmd_verify(args)
    if args.command == "draw":
        return cmd_draw(args)
    if args.command == "solve":
        return cmd_solve(args)
    if args.command == "extract":
        return cmd_extract(args)
    if args.command == "assemble":
        return cmd_assemble(args, parser)
    parser.error(f"unknown command {args.command}")
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
