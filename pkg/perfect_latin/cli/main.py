"""
perfect-latin command line entry point.
"""

import argparse
import json
import logging
import sys
from typing import List, Optional

from pydantic import ValidationError

from ..core.config import settings
from ..core.exceptions import (
    NotPerfectError,
    PerfectLatinError,
    PrimeSearchExhaustedError,
)
from ..models.cli import CommandResult, ExitCode
from ..services.registry_service import RegistryService, set_registry
from . import commands

logger = logging.getLogger(__name__)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """Raises instead of exiting so run() can return a result"""

    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="perfect-latin", description="Perfect Latin rectangles: construct, extend, search, verify.")
    parser.add_argument("--json", action="store_true", help="Print the machine-readable payload")
    parser.add_argument("--threads", type=int, default=settings.threads)
    parser.add_argument("--seed", type=int, default=None, help="Reserved for randomized modes; currently unused")
    parser.add_argument("--registry", default=None, help="Directory of perfect squares named <order>.lrect")
    parser.add_argument("--log-level", default=settings.log_level)

    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("gen-cyclic", help="Cyclic square (c - a) mod n")
    p.add_argument("n", type=int)
    p.add_argument("--emit", default=None)
    p.set_defaults(handler=commands.gen_cyclic)

    p = sub.add_parser("verify", help="Perfection report of an LRECT file")
    p.add_argument("file")
    p.set_defaults(handler=commands.verify)

    p = sub.add_parser("extend", help="Width extension of R by the square S")
    p.add_argument("rect")
    p.add_argument("square")
    p.add_argument("--col", type=int, default=None)
    p.add_argument("--sym", type=int, default=None, help="Symbol of the relabeled S to overwrite")
    p.add_argument("--base", type=int, default=None, help="First label of the relabeled S")
    p.add_argument("--trace", default=None, help="Write the extension trace as JSON")
    p.add_argument("--emit", default=None)
    p.set_defaults(handler=commands.extend)

    p = sub.add_parser("chain", help="Execute the extension chain for odd m and residue i")
    p.add_argument("m", type=int)
    p.add_argument("i", type=int)
    p.add_argument("--emit", default=None)
    p.set_defaults(handler=commands.chain)

    p = sub.add_parser("construct", help="Build a perfect m x n rectangle")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.add_argument("--emit", default=None)
    p.set_defaults(handler=commands.construct)

    p = sub.add_parser("search", help="Backtracking search")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.add_argument("--mode", choices=["first", "count", "all"], default="count")
    p.add_argument("--reduced", action="store_true")
    p.add_argument("--budget", type=int, default=settings.search_node_budget)
    p.add_argument("--no-prune", action="store_true")
    p.add_argument("--unfiltered", action="store_true", help="Count every Latin rectangle, perfect or not")
    p.set_defaults(handler=commands.search)

    p = sub.add_parser("theta", help="Smallest certified width k = i (mod m-1)")
    p.add_argument("m", type=int)
    p.add_argument("i", type=int)
    p.add_argument("--cutoff", type=int, required=True)
    p.add_argument("--budget", type=int, default=settings.theta_search_budget)
    p.set_defaults(handler=commands.theta)

    p = sub.add_parser("theta-m", help="theta(m, i) for every odd residue")
    p.add_argument("m", type=int)
    p.add_argument("--cutoff", type=int, required=True)
    p.add_argument("--budget", type=int, default=settings.theta_search_budget)
    p.set_defaults(handler=commands.theta_m)

    p = sub.add_parser("bound", help="Explicit width bounds for m rows")
    p.add_argument("m", type=int)
    p.set_defaults(handler=commands.bound)

    p = sub.add_parser("export-factorization", help="Edge list of the one-factorization")
    p.add_argument("file")
    p.add_argument("--out", default=None)
    p.set_defaults(handler=commands.export_factorization)

    p = sub.add_parser("oracle-verify", help="Compare permutation and graph perfection verdicts")
    p.add_argument("file")
    p.set_defaults(handler=commands.oracle_verify)

    return parser


def _failure(code: ExitCode, command: Optional[str], message: str) -> CommandResult:
    return CommandResult(exit_code=code, command=command, error=message)


def run(argv: Optional[List[str]] = None) -> CommandResult:
    """Parse argv, dispatch to the subcommand and map failures to exit codes"""
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        return _failure(ExitCode.USAGE, None, str(e))
    except SystemExit as e:
        # --help
        return CommandResult(exit_code=ExitCode(e.code or 0))

    level = logging.getLevelName(args.log_level.upper())
    if not isinstance(level, int):
        return _failure(ExitCode.USAGE, args.command, f"Unknown log level {args.log_level}")
    logging.basicConfig(level=level, stream=sys.stderr)
    if args.registry:
        set_registry(RegistryService(args.registry))
    if args.threads < 1:
        return _failure(ExitCode.USAGE, args.command, "--threads must be at least 1")

    try:
        result = args.handler(args)
    except NotPerfectError as e:
        return _failure(ExitCode.VERIFIED_FALSE, args.command, str(e))
    except PrimeSearchExhaustedError as e:
        return _failure(ExitCode.BUDGET_EXHAUSTED, args.command, str(e))
    except (PerfectLatinError, ValidationError, OSError) as e:
        logger.debug(f"{args.command} failed", exc_info=True)
        return _failure(ExitCode.USAGE, args.command, str(e))

    result.command = args.command
    if args.json:
        result.text = json.dumps(result.payload, indent=2) + "\n"
    return result


def main() -> None:
    result = run()
    if result.text:
        sys.stdout.write(result.text)
    if result.error:
        sys.stderr.write(f"error: {result.error}\n")
    sys.exit(int(result.exit_code))


if __name__ == "__main__":
    main()
