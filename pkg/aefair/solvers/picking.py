"""
Picking scheme

Agents take their favorite remaining item one at a time in index order;
when items outnumber agents, the last agent receives everything left.
"""

import logging

from .. import core as _core
from ..constants import UNASSIGNED
from .base import Solver

logger: logging.Logger = logging.getLogger(__name__)


def solve_aef1_picking(inst: _core.Instance) -> _core.Allocation:
    """
    Builds an AEF-1 allocation without search.

    Ties between equally valued items go to the lowest item index.

    :param inst: Instance.
    :return: Complete allocation.
    """

    n, m = inst.n, inst.m
    owner: list[int] = [UNASSIGNED] * m
    remaining: list[int] = list(range(m))

    pickers: int = n if m <= n else n - 1
    for agent in range(min(pickers, m)):
        row = inst.values[agent]
        favorite: int = max(remaining, key=lambda g: (row[g], -g))
        remaining.remove(favorite)
        owner[favorite] = agent
        logger.debug("Agent %d picks item %d", agent, favorite)

    for item in remaining:
        owner[item] = n - 1

    return _core.Allocation(tuple(owner))


class PickingSolver(Solver):
    """
    Picking scheme; ignores quotas.
    """

    name: str = "picking"
    honors_quota: bool = False

    def solve(
        self, inst: _core.Instance, quota: _core.Quota | None = None
    ) -> _core.Allocation | None:
        if quota is not None:
            logger.warning("%s does not honor quotas; ignoring the supplied quota", self.name)

        return solve_aef1_picking(inst)


__all__: tuple[str, ...] = ("solve_aef1_picking", "PickingSolver")
