"""
Centralized solver construction

Provides a means to create a solver based on its algorithm name,
so that front ends and scripts need not import solver classes.
"""

from importlib.metadata import entry_points
from typing import TYPE_CHECKING

from . import exceptions as _exceptions
from . import util as _util

if TYPE_CHECKING:
    # noinspection PyProtectedMember
    from importlib.metadata import EntryPoints

    from .solvers import base as _base

SOLVERS: "EntryPoints" = entry_points(group="aefair.solver")

# Used when the distribution metadata is unavailable, e.g. from a source checkout.
BUILTIN_SOLVERS: dict[str, str] = {
    "picking": "aefair.solvers.picking:PickingSolver",
    "brute-aef": "aefair.solvers.brute_force:BruteForceAefSolver",
    "brute-aef1": "aefair.solvers.brute_force:BruteForceAef1Solver",
    "dp-binary": "aefair.solvers.binary:BinaryDpSolver",
    "dp-approx": "aefair.solvers.approximate:ApproxDpSolver",
}


def algorithm_names() -> tuple[str, ...]:
    """
    Lists the algorithm names that `dispatch` accepts without overrides.

    :return: Sorted names.
    """

    return tuple(sorted(set(SOLVERS.names) | set(BUILTIN_SOLVERS)))


def _extract_requested_class(
    name: str, overrides: dict[str, str | type] | None
) -> type["_base.Solver"] | None:
    """
    Converts a named solver into its loaded class.

    The name is looked up in `overrides` first, then among registered
    entry points, and finally in the built-in table.

    :param name: Name of the algorithm.
    :param overrides: Dictionary to override registered solvers.
    :return: Resolved class.
    """

    if overrides is not None and name in overrides:
        requested_class: str | type["_base.Solver"] = overrides[name]
        if isinstance(requested_class, str):
            requested_class = _util.load_object(requested_class)

        return requested_class

    try:
        return SOLVERS[name].load()
    except KeyError:
        pass

    if name in BUILTIN_SOLVERS:
        return _util.load_object(BUILTIN_SOLVERS[name])

    return None


def dispatch(
    algorithm: str,
    overrides: dict[str, str | type["_base.Solver"]] | None = None,
    **kwargs,
) -> "_base.Solver":
    """
    Given an algorithm name, instantiates a solver.

    :param algorithm: Algorithm name, such as dp-binary.
    :param overrides: Algorithm name to solver class lookup overrides.
    :param kwargs: Keyword arguments for the solver.
    :return: Instantiated solver.
    """

    solver_class: type["_base.Solver"] | None = _extract_requested_class(algorithm, overrides)
    if solver_class is None:
        raise _exceptions.DispatchException(f"Unknown algorithm: {algorithm}")

    return solver_class(**kwargs)


__all__: tuple[str, ...] = ("dispatch", "algorithm_names", "SOLVERS", "BUILTIN_SOLVERS")
