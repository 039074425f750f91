"""
Command-line front end

Subcommands check, solve and gen wrap the fairness checkers, the
solvers and the instance generators. Exit codes depend only on the
outcome category.
"""

import argparse
import json
import logging
import re
import sys
from fractions import Fraction
from typing import Any, Callable, Sequence

from . import core as _core
from . import exceptions as _exceptions
from . import fairness as _fairness
from . import formats as _formats
from . import reductions as _reductions
from . import util as _util
from .constants import DEFAULT_MAX_ALLOCATIONS, DEFAULT_MAX_MATRICES, DEFAULT_MAX_STATES
from .dispatch import algorithm_names, dispatch

logger: logging.Logger = logging.getLogger(__name__)

EXIT_OK: int = 0
EXIT_CHECK_FAILED: int = 1
EXIT_INPUT_ERROR: int = 2
EXIT_NO: int = 3
EXIT_CAP: int = 4

INPUT_ERRORS: tuple[type[Exception], ...] = (
    _exceptions.DocumentException,
    _exceptions.InvalidInstanceException,
    _exceptions.InvalidParameterException,
    _exceptions.IncompleteAllocationException,
    _exceptions.AgentIndexException,
    _exceptions.NonBinaryInstanceException,
    _exceptions.DispatchException,
)

GADGETS: tuple[str, ...] = ("partition", "ef-embedding", "eqcard")


def _rational(text: str) -> Fraction:
    try:
        return _util.as_rational(text)
    except _exceptions.InvalidParameterException as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _load_instance(path: str) -> tuple[_core.Instance, _core.Quota | None]:
    return _formats.instance_from_document(_formats.load_document(path))


################################################################################
# check                                                                        #
################################################################################


def cmd_check(args: argparse.Namespace) -> int:
    """
    Writes the verdicts of an allocation.

    The requested checks are α-AEF-1 and ε-error AEF-1 when their flags
    are given, otherwise AEF-1. A quota carried by the instance document
    is always a requested check.

    :param args: Parsed arguments.
    :return: Exit code.
    """

    inst, quota = _load_instance(args.instance)
    allocation = _formats.allocation_from_document(_formats.load_document(args.allocation), inst)

    verdicts = _formats.verdicts_document(inst, allocation, quota, args.alpha, args.eps)
    _formats.dump_document(_formats.allocation_to_document(allocation, verdicts), args.output)

    requested: list[bool] = []
    if args.alpha is not None:
        requested.append(verdicts["alpha"]["holds"])
    if args.eps is not None:
        requested.append(verdicts["eps"]["holds"])
    if not requested:
        requested.append(verdicts["aef1"])
    if quota is not None:
        requested.append(verdicts["quota_satisfied"])

    return EXIT_OK if all(requested) else EXIT_CHECK_FAILED


################################################################################
# solve                                                                        #
################################################################################


def _confirm(
    inst: _core.Instance,
    allocation: _core.Allocation,
    quota: _core.Quota | None,
    claim: str,
    guarantee: Fraction | None,
) -> bool:
    if quota is not None and not _core.satisfies_quota(allocation, quota)[0]:
        return False

    if claim == "aef":
        return _fairness.is_aef(inst, allocation)[0]
    if claim == "alpha-aef1":
        # A factor of at most 0 constrains nothing.
        return guarantee is None or guarantee <= 0 or _fairness.is_alpha_aef1(inst, allocation, guarantee)

    return _fairness.is_aef1(inst, allocation)[0]


def cmd_solve(args: argparse.Namespace) -> int:
    """
    Runs a solver and writes its allocation with self-checked verdicts.

    :param args: Parsed arguments.
    :return: Exit code.
    """

    inst, quota = _load_instance(args.instance)
    if args.quota_from_file is not None:
        quota = _formats.quota_from_document(_formats.load_document(args.quota_from_file), inst.n)

    solver = dispatch(
        args.algorithm,
        max_allocations=args.max_allocations,
        max_states=args.max_states,
        max_matrices=args.max_matrices,
    )
    if quota is not None and not solver.honors_quota:
        logger.warning("%s does not honor quotas; ignoring the quota", solver.name)
        quota = None

    allocation = solver.run(inst, quota)

    if allocation is None:
        _formats.dump_document(_formats.NO_DOCUMENT, args.output, compact=True)
        return EXIT_NO

    guarantee: Fraction | None = solver.guarantee(inst)
    confirmed: bool = _confirm(inst, allocation, quota, solver.claim, guarantee)

    verdicts = _formats.verdicts_document(inst, allocation, quota)
    verdicts["algorithm"] = solver.name
    verdicts["confirmed"] = confirmed
    if solver.claim == "alpha-aef1":
        verdicts["alpha_guarantee"] = None if guarantee is None else _util.format_rational(guarantee)

    _formats.dump_document(_formats.allocation_to_document(allocation, verdicts), args.output)

    if not confirmed:
        logger.error("%s returned an allocation that fails its own %s claim", solver.name, solver.claim)
        return EXIT_CHECK_FAILED

    return EXIT_OK


################################################################################
# gen                                                                          #
################################################################################

INLINE_INPUT_PATTERN: re.Pattern[str] = re.compile(r"\s*(?:X\s*=\s*)?(?P<list>\[.*])\s*$")


def _read_partition_input(text: str) -> list[int]:
    """
    Reads a partition input given inline, as in X=[1,1,3,3], or as a file.

    A file may hold a bare array or an object with an "X" array.
    """

    match = INLINE_INPUT_PATTERN.match(text)
    if match is not None:
        try:
            raw: Any = json.loads(match.group("list"))
        except json.JSONDecodeError as exc:
            raise _exceptions.DocumentException(f"malformed partition input: {exc.msg}") from exc
    else:
        raw = _formats.load_document(text)
        if isinstance(raw, dict):
            raw = raw.get("X")

    if not isinstance(raw, list):
        raise _exceptions.DocumentException("partition input must be an array at X")

    return raw


def cmd_gen(args: argparse.Namespace) -> int:
    """
    Writes a generated instance.

    :param args: Parsed arguments.
    :return: Exit code.
    """

    quota: _core.Quota | None = None

    if args.random is not None:
        n, m, model, seed = args.random
        try:
            n, m, seed = int(n), int(m), int(seed)
        except ValueError as exc:
            raise _exceptions.InvalidParameterException(
                f"N, M and SEED of --random must be integers, got {args.random}"
            ) from exc

        inst = _reductions.gen_random(n, m, model, seed)
    elif args.gadget in ("partition", "eqcard"):
        values = _reductions.PartitionInput(tuple(_read_partition_input(args.input)))
        if args.gadget == "partition":
            inst = _reductions.gen_from_partition(values)
        else:
            inst, quota = _reductions.gen_from_eqcard_partition(values, n_target=args.agents)
    else:
        source, _ = _load_instance(args.input)
        inst, quota = _reductions.gen_ef_embedding(source)

    _formats.dump_document(_formats.instance_to_document(inst, quota), args.output)
    return EXIT_OK


################################################################################
# Entry point                                                                  #
################################################################################


def build_parser() -> argparse.ArgumentParser:
    """
    Builds the argument parser.

    :return: Parser with the check, solve and gen subcommands.
    """

    parser = argparse.ArgumentParser(
        prog="aefair", description="Average envy-freeness checkers, solvers and gadgets."
    )
    parser.add_argument(
        "-v", "--verbose", action="count", default=0, help="Log INFO (-v) or DEBUG (-vv) to stderr."
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    check = subparsers.add_parser("check", help="Judge an allocation.")
    check.add_argument("instance", help="Instance document; its quota, if any, is checked too.")
    check.add_argument("allocation", help="Allocation document.")
    check.add_argument("--alpha", type=_rational, default=None, help="Check α-AEF-1, α as p/q.")
    check.add_argument("--eps", type=_rational, default=None, help="Check ε-error AEF-1, ε as p/q.")
    check.add_argument("--output", default=None, help="Destination (default: stdout).")
    check.set_defaults(handler=cmd_check)

    solve = subparsers.add_parser("solve", help="Search for an allocation.")
    solve.add_argument("instance", help="Instance document.")
    solve.add_argument(
        "--algorithm",
        choices=algorithm_names(),
        default="picking",
        help="Algorithm to run (default: picking).",
    )
    solve.add_argument(
        "--quota-from-file",
        default=None,
        metavar="PATH",
        help="Quota document replacing the instance's own quota.",
    )
    solve.add_argument("--output", default=None, help="Destination (default: stdout).")
    solve.add_argument(
        "--max-states",
        type=int,
        default=DEFAULT_MAX_STATES,
        help=f"Cap on reached DP states (default: {DEFAULT_MAX_STATES}).",
    )
    solve.add_argument(
        "--max-matrices",
        type=int,
        default=DEFAULT_MAX_MATRICES,
        help=f"Cap on removing matrices (default: {DEFAULT_MAX_MATRICES}).",
    )
    solve.add_argument(
        "--max-allocations",
        type=int,
        default=DEFAULT_MAX_ALLOCATIONS,
        help=f"Cap on n^m for brute force (default: {DEFAULT_MAX_ALLOCATIONS}).",
    )
    solve.set_defaults(handler=cmd_solve)

    gen = subparsers.add_parser("gen", help="Generate an instance.")
    source = gen.add_mutually_exclusive_group(required=True)
    source.add_argument("--gadget", choices=GADGETS, help="Reduction gadget to build.")
    source.add_argument(
        "--random",
        nargs=4,
        metavar=("N", "M", "MODEL", "SEED"),
        help="Random instance, e.g. 3 5 binary(1/2) 7.",
    )
    gen.add_argument(
        "--input",
        default=None,
        help="Gadget input: X=[...] inline or a file; an instance file for ef-embedding.",
    )
    gen.add_argument("--agents", type=int, default=3, help="Agents in the eqcard gadget (default: 3).")
    gen.add_argument("--output", default=None, help="Destination (default: stdout).")
    gen.set_defaults(handler=cmd_gen)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    """
    Runs the command line.

    :param argv: Arguments, defaulting to sys.argv.
    :return: Exit code.
    """

    parser = build_parser()
    args = parser.parse_args(argv)

    logging.basicConfig(
        level={0: logging.WARNING, 1: logging.INFO}.get(args.verbose, logging.DEBUG),
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )

    if args.command == "gen" and args.gadget is not None and args.input is None:
        parser.error("--gadget requires --input")

    handler: Callable[[argparse.Namespace], int] = args.handler
    try:
        return handler(args)
    except INPUT_ERRORS as exc:
        logger.error("%s", exc)
        return EXIT_INPUT_ERROR
    except _exceptions.ResourceCapException as exc:
        logger.error("Resource cap reached: %s", exc)
        return EXIT_CAP
    except OSError as exc:
        logger.error("%s", exc)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
