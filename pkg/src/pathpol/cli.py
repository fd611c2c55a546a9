"""Command-line front end.

Subcommands: ``gen`` (write a seeded random unitary), ``compile`` (lower a
matrix file onto an architecture and verify), ``verify`` (re-check a saved
netlist against a matrix), ``analyze`` (cross-architecture resource and
loss report, optional plot), ``diagram`` (ASCII or SVG lane diagram).

Exit codes: 0 ok, 1 verification failure, 2 unreadable or malformed input,
3 unsupported dimension, 4 non-unitary input, 5 internal or unknown
element.  Set ``PATHPOL_LOG=debug`` (or another level name) for progress
logging on standard error; output on standard out is deterministic for a
given command line and input files.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from .compilers import compile_unitary
from .decomposition import rotation_count
from .elements import Netlist
from .errors import (
    DimensionError,
    NetlistError,
    NonUnitaryError,
    ParseError,
    PathpolError,
    SchedulingError,
)
from .linalg import haar_unitary
from .matrixio import load_matrix, save_matrix
from .resources import (
    LOSSLESS,
    compare_report,
    comparison_markdown,
    count_elements,
    optical_depth,
)
from .simulator import LossModel, transmission, verify

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_PARSE = 2
EXIT_DIMENSION = 3
EXIT_NONUNITARY = 4
EXIT_INTERNAL = 5

logger = logging.getLogger("pathpol")


def _setup_logging() -> None:
    level_name = os.environ.get("PATHPOL_LOG", "").strip()
    if not level_name:
        return
    level = getattr(logging, level_name.upper(), logging.INFO)
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")


def _parse_loss(text) -> LossModel:
    if text is None:
        return LOSSLESS
    parts = text.split(",")
    if len(parts) != 5:
        raise ParseError("--loss expects five values: eta_b,eta_p,eta_w,eta_ph_tilde,eta_ph")
    try:
        return LossModel(*(float(p) for p in parts))
    except ValueError as exc:
        raise ParseError(f"bad --loss value: {exc}") from exc


def _parse_range(text: str) -> tuple:
    lo, sep, hi = text.partition("..")
    try:
        low = int(lo)
        high = int(hi) if sep else low
    except ValueError as exc:
        raise ParseError(f"bad --dim-range {text!r}; expected A..B") from exc
    if low < 1 or high < low:
        raise ParseError(f"bad --dim-range {text!r}; need 1 <= A <= B")
    return low, high


def cmd_gen(args) -> int:
    if args.dim < 1:
        raise ParseError(f"--dim must be at least 1, got {args.dim}")
    mat = haar_unitary(args.dim, seed=args.seed)
    save_matrix(args.out, mat)
    print(f"wrote dim-{args.dim} unitary to {args.out} (seed {args.seed})")
    return EXIT_OK


def _census_summary(architecture: str, census: dict, depth: int) -> str:
    if architecture == "mzi":
        return f"{census.get('mzi', 0)} MZIs, depth {depth}"
    if architecture == "hybrid":
        combined = census.get("combined", 0)
        pdbs = census.get("pdbs", 0)
        return f"census {{combined {combined}, PDBS {pdbs}}}, depth {depth}"
    pbs = census.get("pbs", 0)
    hwp = census.get("hwp_fixed", 0)
    combined = census.get("combined", 0)
    return f"census {{PBS {pbs}, HWP {hwp}, combined {combined}}}, depth {depth}"


def cmd_compile(args) -> int:
    mat = load_matrix(args.input)
    logger.info("compiling dim-%d matrix onto %s", mat.shape[0], args.arch)
    nl = compile_unitary(mat, args.arch)
    with open(args.out, "w", encoding="utf-8") as handle:
        handle.write(nl.dumps())
        handle.write("\n")
    report = verify(nl, mat, tol=args.tol)
    census = count_elements(nl)
    depth = optical_depth(nl)
    print(f"rotations: {rotation_count(nl.dim)}")
    print(f"census: {json.dumps(dict(sorted(census.items())))}")
    print(f"summary: {_census_summary(nl.architecture, census, depth)}")
    print(f"phase-invariant error: {report.phase_invariant_error:.3e}")
    print(f"netlist: {args.out}")
    return EXIT_OK if report.passed else EXIT_VERIFY


def _load_netlist(path: str) -> Netlist:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    return Netlist.loads(text)


def cmd_verify(args) -> int:
    nl = _load_netlist(args.netlist)
    target = load_matrix(args.against)
    report = verify(nl, target, tol=args.tol)
    trep = transmission(nl, _parse_loss(args.loss))
    doc = report.to_json()
    doc["worst_case_transmission"] = trep.worst_case
    doc["per_mode_transmission"] = list(trep.per_mode)
    print(json.dumps(doc, indent=2))
    return EXIT_OK if report.passed else EXIT_VERIFY


def cmd_analyze(args) -> int:
    low, high = _parse_range(args.dim_range)
    loss = _parse_loss(args.loss)
    reports = [compare_report(n, loss) for n in range(low, high + 1)]
    if args.format == "json":
        text = json.dumps({"loss": loss.to_json(), "reports": reports}, indent=2) + "\n"
    else:
        text = comparison_markdown(reports) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text)
        print(f"report: {args.out}")
    else:
        sys.stdout.write(text)
    if args.plot:
        ns = list(range(low, high + 1))
        series = {}
        for rep in reports:
            for row in rep["rows"]:
                series.setdefault(row["architecture"], []).append(row["transmission"])
        from .diagram import plot_transmission

        plot_transmission(ns, series, args.plot)
        print(f"plot: {args.plot}")
    return EXIT_OK


def cmd_diagram(args) -> int:
    nl = _load_netlist(args.netlist)
    if args.ascii:
        from .diagram import render_ascii

        sys.stdout.write(render_ascii(nl))
    else:
        from .diagram import render_svg

        render_svg(nl, args.out)
        print(f"diagram: {args.out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pathpol",
        description="Compile unitaries onto photonic path/polarization meshes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="write a seeded Haar-random unitary matrix file")
    p_gen.add_argument("--dim", type=int, required=True)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--out", required=True)
    p_gen.set_defaults(func=cmd_gen)

    p_compile = sub.add_parser("compile", help="decompose a matrix file and emit a netlist")
    p_compile.add_argument("--in", dest="input", required=True)
    p_compile.add_argument("--arch", choices=("mzi", "hybrid", "fullpol"), required=True)
    p_compile.add_argument("--out", required=True)
    p_compile.add_argument("--tol", type=float, default=1e-9)
    p_compile.set_defaults(func=cmd_compile)

    p_verify = sub.add_parser("verify", help="simulate a netlist against a matrix file")
    p_verify.add_argument("--netlist", required=True)
    p_verify.add_argument("--against", required=True)
    p_verify.add_argument("--tol", type=float, default=1e-9)
    p_verify.add_argument("--loss", default=None, help="eta_b,eta_p,eta_w,eta_ph_tilde,eta_ph")
    p_verify.set_defaults(func=cmd_verify)

    p_analyze = sub.add_parser("analyze", help="cross-architecture resource and loss report")
    p_analyze.add_argument("--dim-range", dest="dim_range", required=True, help="pair-count range A..B (N = 2n)")
    p_analyze.add_argument("--loss", default=None, help="eta_b,eta_p,eta_w,eta_ph_tilde,eta_ph")
    p_analyze.add_argument("--format", choices=("json", "md"), default="json")
    p_analyze.add_argument("--out", default=None)
    p_analyze.add_argument("--plot", default=None, help="write a transmission-vs-n figure to this path")
    p_analyze.set_defaults(func=cmd_analyze)

    p_diagram = sub.add_parser("diagram", help="render a netlist as a lane diagram")
    p_diagram.add_argument("--netlist", required=True)
    target = p_diagram.add_mutually_exclusive_group(required=True)
    target.add_argument("--out", default=None, help="SVG output path")
    target.add_argument("--ascii", action="store_true", help="print a text diagram to stdout")
    p_diagram.set_defaults(func=cmd_diagram)

    return parser


def main(argv=None) -> int:
    _setup_logging()
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except DimensionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DIMENSION
    except NonUnitaryError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NONUNITARY
    except (NetlistError, SchedulingError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except PathpolError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
