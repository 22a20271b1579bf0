import argparse
import logging

from ..campaigns import reproduce_example, resolve_suites, run_campaign
from ..config import FloorConfig, default_seed
from ..errors import ConfigInvalidError
from ..witness import Verdict, estimate_variance_floor, expectation_witness, variance_witness
from .errors import ExitCode
from .io import dumps, emit, floor_document, load_floor, load_state, load_triple, rows_to_csv

logger = logging.getLogger(__name__)


def _command_echo(args: argparse.Namespace) -> list[str]:
    return list(args.argv)


def cmd_verify(args: argparse.Namespace) -> int:
    seed = default_seed() if args.seed is None else args.seed
    report = run_campaign(
        resolve_suites(args.suite), args.dim, args.trials, seed, _command_echo(args)
    )
    if args.format == "csv":
        emit(rows_to_csv(report.rows), args.out)
    else:
        emit(dumps(report.to_dict()), args.out)
    logger.info("verify: %d trials, %d failures", report.trials, report.failures)
    return ExitCode.OK if report.failures == 0 else ExitCode.FAILURES


def cmd_witness(args: argparse.Namespace) -> int:
    triple = load_triple(args.triple)
    state = load_state(args.state)
    if args.method == "variance":
        if args.floor is None:
            raise ConfigInvalidError("--method variance requires --floor")
        report = variance_witness(triple, state, load_floor(args.floor))
    else:
        report = expectation_witness(triple, state)
    emit(dumps(report.to_dict()), args.out)
    logger.info("witness verdict: %s", report.verdict.value)
    return ExitCode.ENTANGLED if report.verdict is Verdict.ENTANGLED else ExitCode.OK


def cmd_floor(args: argparse.Namespace) -> int:
    triple = load_triple(args.triple)
    if args.grid_check and triple.dim != 2:
        raise ConfigInvalidError(f"--grid-check needs a qubit triple, got dim={triple.dim}")
    config = FloorConfig(
        restarts=args.restarts,
        max_iterations=args.max_iterations,
        seed=default_seed() if args.seed is None else args.seed,
        grid_check=args.grid_check,
    )
    estimate = estimate_variance_floor(triple, config)
    emit(dumps(floor_document(estimate)), args.out)
    return ExitCode.OK


def cmd_example(args: argparse.Namespace) -> int:
    report = reproduce_example(_command_echo(args))
    emit(dumps(report.to_dict()), args.out)
    for check in report.checks:
        if not check.passed:
            logger.warning("check %s: expected %s, observed %s", check.name, check.expected, check.observed)
    return ExitCode.OK if report.failures == 0 else ExitCode.FAILURES
