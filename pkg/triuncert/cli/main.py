import argparse
import logging
import sys
from collections.abc import Sequence

from ..campaigns import SUITE_ORDER
from ..errors import TripleUncertaintyError
from .commands import cmd_example, cmd_floor, cmd_verify, cmd_witness
from .errors import exit_code_for

logger = logging.getLogger("triuncert")


def _non_negative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {value}")
    return value


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="triuncert",
        description="Triple-observable uncertainty relations and entanglement witnesses.",
    )
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-q", "--quiet", action="store_true", help="only warnings and errors")
    verbosity.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    commands = parser.add_subparsers(dest="command", required=True)

    verify = commands.add_parser("verify", help="run randomized invariant suites")
    verify.add_argument("--dim", type=int, required=True)
    verify.add_argument("--trials", type=_non_negative, required=True)
    verify.add_argument("--seed", type=_non_negative, default=None)
    verify.add_argument(
        "--suite", choices=[s.value for s in SUITE_ORDER] + ["all"], default="all"
    )
    verify.add_argument("--format", choices=["json", "csv"], default="json")
    verify.add_argument("--out", default=None)
    verify.set_defaults(handler=cmd_verify)

    witness = commands.add_parser("witness", help="classify a state as entangled or inconclusive")
    witness.add_argument("--triple", required=True)
    witness.add_argument("--state", required=True)
    witness.add_argument("--method", choices=["expectation", "variance"], default="expectation")
    witness.add_argument("--floor", default=None)
    witness.add_argument("--out", default=None)
    witness.set_defaults(handler=cmd_witness)

    floor = commands.add_parser("floor", help="estimate the separable variance floor")
    floor.add_argument("--triple", required=True)
    floor.add_argument("--restarts", type=_positive, default=32)
    floor.add_argument("--max-iterations", type=_positive, default=2000)
    floor.add_argument("--seed", type=_non_negative, default=None)
    floor.add_argument("--grid-check", action="store_true")
    floor.add_argument("--out", default=None)
    floor.set_defaults(handler=cmd_floor)

    example = commands.add_parser("example", help="reproduce the Pauli-triple example")
    example.add_argument("--out", default=None)
    example.set_defaults(handler=cmd_example)
    return parser


def _configure_logging(args: argparse.Namespace) -> None:
    level = logging.WARNING if args.quiet else logging.DEBUG if args.verbose else logging.INFO
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as ex:
        return int(ex.code or 0)
    args.argv = argv
    _configure_logging(args)
    try:
        return int(args.handler(args))
    except TripleUncertaintyError as ex:
        logger.error("%s: %s", type(ex).__name__, ex)
        return int(exit_code_for(ex))


if __name__ == "__main__":
    sys.exit(main())
