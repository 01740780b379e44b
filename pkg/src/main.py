#!/usr/bin/env python3
"""
Main entry point for calg.
Parses a problem file, runs the requested analysis and prints the report.
"""

import argparse
import dataclasses
import logging
import sys
from typing import List, Optional

from src.config import DEFAULT_CONFIG
from src.errors import CalgError, InvariantError, PreconditionError
from src.parser.parser import ANALYSES, parse_polynomials, parse_problem
from src.reports.harness import run_conjecture_harness
from src.reports.report import emit_report, run_analyses

logger = logging.getLogger("calg")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="calg", description="Cotangent modules, resolvents and linkage of "
                                                              "homogeneous ideals over Q")
    parser.add_argument("--verbose", action="store_true", help="log progress")
    parser.add_argument("--debug", action="store_true", help="log linear algebra sizes and resolvent steps")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ANALYSES + ("harness",):
        command = sub.add_parser(name, help=f"run the {name} analysis on a problem file")
        command.add_argument("file", help="problem file, '-' for stdin")
        command.add_argument("--format", choices=("text", "json"), default="text")
        command.add_argument("--bound", type=int, help="homological bound D")
        command.add_argument("--series-order", type=int, help="series truncation order N")
        command.add_argument("--seed", type=int, help="seed for randomized searches")
        command.add_argument("--degree-cap", type=int, help="ceiling on internal degrees")
        command.add_argument("--timing", action="store_true", help="include per-analysis timings")
        if name == "link":
            choice = command.add_mutually_exclusive_group()
            choice.add_argument("--regseq", help="regular sequence to link by, e.g. 'x^2, y^2'")
            choice.add_argument("--auto", action="store_true",
                                help="search for a regular sequence, ignoring one given in the problem file")
    serve = sub.add_parser("serve", help="serve reports for a directory of problem files")
    serve.add_argument("directory")
    serve.add_argument("--port", type=int, default=5000)
    return parser


def configure_logging(verbose: bool, debug: bool) -> None:
    level = logging.DEBUG if debug else logging.INFO if verbose else logging.WARNING
    logging.basicConfig(level=level, stream=sys.stderr, format="%(asctime)s %(name)s %(levelname)s: %(message)s")


def read_problem(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as handle:
        return handle.read()


def run(args: argparse.Namespace) -> int:
    if args.command == "serve":
        from src.report_server.server import setup_report_server
        server = setup_report_server(args.directory, DEFAULT_CONFIG)
        server.run(port=args.port)
        return 0
    spec = parse_problem(read_problem(args.file), args.file)
    for key in ("bound", "series_order", "seed", "degree_cap"):
        value = getattr(args, key)
        if value is not None:
            if key != "seed" and value <= 0:
                raise PreconditionError(f"--{key.replace('_', '-')} must be positive")
            spec = dataclasses.replace(spec, **{key: value})
    if getattr(args, "regseq", None):
        spec = dataclasses.replace(spec, regseq=parse_polynomials(args.regseq, spec.ring))
    elif getattr(args, "auto", False):
        spec = dataclasses.replace(spec, regseq=None)
    logger.info("running %s on %s", args.command, args.file)
    if args.command == "harness":
        report = run_conjecture_harness(spec)
    else:
        report = run_analyses(dataclasses.replace(spec, analyses=(args.command,)))
    sys.stdout.write(emit_report(report, args.format, args.timing))
    if report.counterexample:
        raise InvariantError("COUNTEREXAMPLE CANDIDATE reported")
    return 0


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose, args.debug)
    try:
        return run(args)
    except CalgError as e:
        print(f"Error: {e}", file=sys.stderr)
        return e.exit_code
    except OSError as e:
        print(f"Error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
