"""
Exhaustive existence oracles

Complete allocations are enumerated depth-first in lexicographic order of
their owner vectors, skipping any branch that can no longer meet the
quota. These searches are exponential and intended for small instances.
"""

import logging
from typing import Callable, Iterator

from .. import _decorators as decorators
from .. import core as _core
from .. import exceptions as _exceptions
from .. import fairness as _fairness
from ..constants import DEFAULT, DEFAULT_MAX_ALLOCATIONS, DEFAULT_TYPE
from .base import Solver

logger: logging.Logger = logging.getLogger(__name__)


def iter_allocations(n: int, m: int, quota: _core.Quota | None = None) -> Iterator[_core.Allocation]:
    """
    Enumerates complete allocations in lexicographic owner-vector order.

    :param n: Number of agents.
    :param m: Number of items.
    :param quota: Only allocations satisfying this quota are produced.
    :yields: Allocations.
    """

    owner: list[int] = [0] * m
    sizes: list[int] = [0] * n

    def deficit() -> int:
        return sum(max(0, low - size) for low, size in zip(quota.lower, sizes))

    def descend(item: int) -> Iterator[_core.Allocation]:
        if item == m:
            yield _core.Allocation(tuple(owner))
            return

        for agent in range(n):
            if quota is not None and sizes[agent] >= quota.upper[agent]:
                continue

            sizes[agent] += 1
            if quota is None or deficit() <= m - item - 1:
                owner[item] = agent
                yield from descend(item + 1)
            sizes[agent] -= 1

    if quota is not None and not quota.is_feasible(m):
        return

    yield from descend(0)


def _search(
    inst: _core.Instance,
    accept: Callable[[_core.Instance, _core.Allocation], bool],
    quota: _core.Quota | None,
    max_allocations: int,
) -> _core.Allocation | None:
    if quota is not None and quota.n != inst.n:
        raise _exceptions.InvalidParameterException(
            f"quota covers {quota.n} agents, instance has {inst.n}"
        )

    space: int = inst.n**inst.m
    if space > max_allocations:
        raise _exceptions.ResourceCapException(
            f"{inst.n}^{inst.m} = {space} allocations exceed the cap of {max_allocations}"
        )

    examined: int = 0
    for allocation in iter_allocations(inst.n, inst.m, quota):
        examined += 1
        if accept(inst, allocation):
            logger.debug("Accepted allocation %s after %d candidates", allocation.owner, examined)
            return allocation

    logger.debug("No allocation accepted among %d candidates", examined)
    return None


def brute_force_aef(
    inst: _core.Instance,
    quota: _core.Quota | None = None,
    max_allocations: int = DEFAULT_MAX_ALLOCATIONS,
) -> _core.Allocation | None:
    """
    Finds the first AEF allocation, optionally under a quota.

    :param inst: Instance.
    :param quota: Optional quota.
    :param max_allocations: Cap on n^m.
    :return: First accepted allocation, or None.
    """

    return _search(inst, lambda i, a: _fairness.is_aef(i, a)[0], quota, max_allocations)


def brute_force_aef1(
    inst: _core.Instance,
    quota: _core.Quota | None = None,
    max_allocations: int = DEFAULT_MAX_ALLOCATIONS,
) -> _core.Allocation | None:
    """
    Finds the first AEF-1 allocation, optionally under a quota.

    :param inst: Instance.
    :param quota: Optional quota.
    :param max_allocations: Cap on n^m.
    :return: First accepted allocation, or None.
    """

    return _search(inst, lambda i, a: _fairness.is_aef1(i, a)[0], quota, max_allocations)


class BruteForceAefSolver(Solver):
    """
    Exhaustive AEF search.
    """

    name: str = "brute-aef"
    claim: str = "aef"

    @decorators.default(max_allocations="max_allocations")
    def solve(
        self,
        inst: _core.Instance,
        quota: _core.Quota | None = None,
        max_allocations: int | DEFAULT_TYPE = DEFAULT,
    ) -> _core.Allocation | None:
        return brute_force_aef(inst, quota, max_allocations=max_allocations)


class BruteForceAef1Solver(Solver):
    """
    Exhaustive AEF-1 search.
    """

    name: str = "brute-aef1"

    @decorators.default(max_allocations="max_allocations")
    def solve(
        self,
        inst: _core.Instance,
        quota: _core.Quota | None = None,
        max_allocations: int | DEFAULT_TYPE = DEFAULT,
    ) -> _core.Allocation | None:
        return brute_force_aef1(inst, quota, max_allocations=max_allocations)


__all__: tuple[str, ...] = (
    "iter_allocations",
    "brute_force_aef",
    "brute_force_aef1",
    "BruteForceAefSolver",
    "BruteForceAef1Solver",
)
