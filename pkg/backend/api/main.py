"""
Command-line front end: argument parsing, logging setup, dispatch and exit codes.

Exit codes: 0 success, 1 unexpected failure, 2 parse or usage error,
3 unsupported instance, 4 fixture missing or malformed, 5 verification mismatch.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional

from config.logging import setup_logging
from config.settings import settings
from ..services.response_builder import ResponseBuilder
from ..utils.exceptions import EtaLacError, ParseError
from .commands import (
    CommandContext,
    CommandResult,
    handle_density,
    handle_expand,
    handle_hecke,
    handle_scan,
    handle_sturm,
    handle_verify,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_UNEXPECTED = 1
EXIT_USAGE = 2


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on usage errors, matching the parse-error exit code"""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="etalac", description=settings.DESCRIPTION)
    parser.add_argument("--format", choices=settings.OUTPUT_FORMATS, default="json", help="Output format")
    parser.add_argument("--fixtures", type=Path, default=None, help="Fixture directory")
    parser.add_argument("--jobs", type=int, default=None, help="Worker processes for the scan")
    parser.add_argument("--log-level", default=settings.LOG_LEVEL, help="Logging level")
    parser.add_argument("--log-json", action="store_true", default=settings.LOG_JSON, help="JSON log lines")
    parser.add_argument("--output", default=None, help="Also write the JSON result to this file in the output directory")
    parser.add_argument("--no-progress", action="store_true", help="Hide the scan progress bar")
    parser.add_argument("--version", action="version", version=f"%(prog)s {settings.VERSION}")

    sub = parser.add_subparsers(dest="command", required=True)

    expand = sub.add_parser("expand", help="q-expansion of an eta product")
    expand.add_argument("spec", help='Eta product, e.g. "eta(12z)^2*eta(48z)^2"')
    expand.add_argument("--terms", type=int, default=20, help="Coefficients from the valuation on")

    scan = sub.add_parser("scan", help="Lacunarity verdicts for b = 1 .. b_max")
    scan.add_argument("--b-max", type=int, default=settings.SCAN_B_MAX)
    scan.add_argument("--mode", choices=("adaptive", "full"), default="adaptive")
    scan.add_argument("--prime", type=int, default=None, help="Hecke prime for b divisible by 23 (e.g. 47)")
    scan.add_argument("--start-truncation", type=int, default=None)
    scan.add_argument("--from-table", action="store_true",
                      help="Witness search from the Appendix 1 table instead of the Hecke test")
    scan.add_argument("--b-min", type=int, default=176, help="First b of the table-driven search")

    verify = sub.add_parser("verify", help="Verify a CM decomposition through its Sturm bound")
    verify.add_argument("--case", type=int, required=True, choices=(1, 2, 3, 4, 5))
    verify.add_argument("--bound", type=int, default=None, help="Override the Sturm bound")

    density = sub.add_parser("density", help="Zero density of f_b(12z)")
    density.add_argument("--b", type=int, required=True)
    density.add_argument("--x", type=int, required=True)
    density.add_argument("--mode", choices=("all", "support_progression"), default=None)
    density.add_argument("--csv", default=None, help="Write the density ladder to this CSV in the output directory")

    sturm = sub.add_parser("sturm", help="Sturm bound for weight k and level N")
    sturm.add_argument("--weight", type=int, default=2)
    sturm.add_argument("--level", type=int, required=True)

    hecke = sub.add_parser("hecke", help="T_p applied to f_b(12z)")
    hecke.add_argument("--b", type=int, required=True)
    hecke.add_argument("--prime", type=int, default=23)
    hecke.add_argument("--terms", type=int, default=50, help="Output coefficients")

    return parser


def _context(args: argparse.Namespace) -> CommandContext:
    context = CommandContext(output_format=args.format, output_name=args.output)
    if args.fixtures is not None:
        context.fixtures_dir = args.fixtures
    if args.jobs is not None:
        context.jobs = args.jobs
    if args.no_progress:
        context.progress = False
    return context


def dispatch(args: argparse.Namespace, context: CommandContext) -> CommandResult:
    if args.command == "expand":
        return handle_expand(args.spec, args.terms, context)
    if args.command == "scan":
        return handle_scan(args.b_max, context, mode=args.mode, alternate_prime=args.prime,
                           start_truncation=args.start_truncation, from_table=args.from_table, b_min=args.b_min)
    if args.command == "verify":
        return handle_verify(args.case, context, bound=args.bound)
    if args.command == "density":
        return handle_density(args.b, args.x, context, mode=args.mode, csv_name=args.csv)
    if args.command == "sturm":
        return handle_sturm(args.weight, args.level, context)
    if args.command == "hecke":
        return handle_hecke(args.b, args.prime, args.terms, context)
    raise ValueError(f"Unknown command: {args.command}")


def _report_failure(error: Exception, fmt: str) -> None:
    error_payload = ResponseBuilder().build_error_response(error)
    print(json.dumps(error_payload, indent=2) if fmt == "json" else f"error: {error}")


def main(argv: Optional[List[str]] = None) -> int:
    """Run one command; returns the exit code"""
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        setup_logging(args.log_level, json_format=args.log_json)
    except ValueError as e:
        error = ParseError(str(e))
        _report_failure(error, args.format)
        return error.exit_code
    context = _context(args)

    try:
        result = dispatch(args, context)
    except EtaLacError as e:
        logger.error(f"{args.command} failed: {e}")
        _report_failure(e, args.format)
        return e.exit_code
    except Exception as e:
        logger.exception(f"{args.command} failed unexpectedly")
        _report_failure(e, args.format)
        return EXIT_UNEXPECTED

    print(result.render(args.format))
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
