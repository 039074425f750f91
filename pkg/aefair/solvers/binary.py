"""
Quota-constrained AEF-1 for binary valuations

With 0/1 values a bundle is characterised, as far as any agent's AEF-1
comparisons go, by its size and the number of items that agent values
at 1. The reached-state DP therefore decides existence exactly.
"""

import logging
from fractions import Fraction

from .. import _decorators as decorators
from .. import core as _core
from .. import exceptions as _exceptions
from ..constants import DEFAULT, DEFAULT_MAX_STATES, DEFAULT_TYPE
from .base import Solver
from .states import DPState, StateGraph, explore

logger: logging.Logger = logging.getLogger(__name__)


def _average(ones: int, size: int) -> Fraction:
    return Fraction(ones, size) if size else Fraction(0)


def _pair_holds(own_ones: int, own_size: int, other_ones: int, other_size: int) -> bool:
    """
    Tries every removal distinguishable by counts alone.

    :return: Whether some removal leaves no envy.
    """

    candidates: list[tuple[int, int, int, int]] = [(own_ones, own_size, other_ones, other_size)]
    if own_size > own_ones:
        candidates.append((own_ones, own_size - 1, other_ones, other_size))
    if other_ones > 0:
        candidates.append((own_ones, own_size, other_ones - 1, other_size - 1))
    if other_size > other_ones:
        candidates.append((own_ones, own_size, other_ones, other_size - 1))
    if own_ones > 0:
        candidates.append((own_ones - 1, own_size - 1, other_ones, other_size))

    return any(_average(a, s) >= _average(b, t) for a, s, b, t in candidates)


def check_state_aef1_binary(state: DPState, quota: _core.Quota, m: int | None = None) -> bool:
    """
    Decides AEF-1 and the quota from a final binary DP state.

    :param state: State whose H entries count items valued at 1.
    :param quota: Quota over the state's agents.
    :param m: Number of items; when given, the state must be final.
    :return: Whether every allocation realising the state is AEF-1 and meets the quota.
    """

    if m is not None and state.k != m:
        raise _exceptions.InvalidParameterException(
            f"state covers {state.k} of {m} items; only final states can be judged"
        )

    if quota.admits(state.W) is not None:
        return False

    n: int = len(state.W)
    for i in range(n):
        for h in range(n):
            if i == h:
                continue
            if not _pair_holds(
                int(state.H[i][i]), state.W[i], int(state.H[i][h]), state.W[h]
            ):
                return False

    return True


def dp_binary_quota(
    inst: _core.Instance,
    quota: _core.Quota,
    max_states: int = DEFAULT_MAX_STATES,
    prune: bool = True,
) -> _core.Allocation | None:
    """
    Decides AEF-1 with a quota exactly on a binary instance.

    :param inst: Binary instance.
    :param quota: Quota over the instance's agents.
    :param max_states: Cap on reached states.
    :param prune: Whether to discard quota-infeasible states while searching.
    :return: An AEF-1 allocation satisfying the quota, or None when none exists.
    """

    if not inst.is_binary:
        raise _exceptions.NonBinaryInstanceException("instance has a value outside of {0, 1}")

    if quota.n != inst.n:
        raise _exceptions.InvalidParameterException(
            f"quota covers {quota.n} agents, instance has {inst.n}"
        )

    if not quota.is_feasible(inst.m):
        logger.info("Quota cannot be met by %d items", inst.m)
        return None

    columns: list[tuple[int, ...]] = [
        tuple(int(row[g]) for row in inst.values) for g in range(inst.m)
    ]
    graph: StateGraph = explore(DPState.initial(inst.n), columns, quota, max_states, prune)
    logger.debug("Binary DP reached %d states", graph.size)

    for state in graph.final_states():
        if check_state_aef1_binary(state, quota, inst.m):
            return _core.Allocation(tuple(graph.reconstruct(state)))

    return None


class BinaryDpSolver(Solver):
    """
    Exact DP for binary instances with a quota.
    """

    name: str = "dp-binary"
    requires_quota: bool = True
    requires_binary: bool = True

    @decorators.default(max_states="max_states", prune="prune")
    def solve(
        self,
        inst: _core.Instance,
        quota: _core.Quota | None = None,
        max_states: int | DEFAULT_TYPE = DEFAULT,
        prune: bool | DEFAULT_TYPE = DEFAULT,
    ) -> _core.Allocation | None:
        return dp_binary_quota(inst, quota, max_states=max_states, prune=prune)


__all__: tuple[str, ...] = ("check_state_aef1_binary", "dp_binary_quota", "BinaryDpSolver")
