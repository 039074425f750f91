"""
Reached-state dynamic programming

A state (W, H, k) summarises a partial allocation of the first k
processed items: W[i] is the size of agent i's bundle and H[i][h] is
agent i's additive value for agent h's bundle. Reached states are kept
sparsely, one dictionary per layer k, mapping the (W, H) key of every
reached state to the (predecessor key, assigned agent) record that first
reached it. Presence in a layer plays the role of the reached flag.
"""

import logging
from dataclasses import dataclass
from typing import Any, Iterator, Self, Sequence

from .. import core as _core
from .. import exceptions as _exceptions
from ..constants import DEFAULT_MAX_STATES

logger: logging.Logger = logging.getLogger(__name__)

StateKey = tuple[tuple[int, ...], tuple[tuple[Any, ...], ...]]


@dataclass(frozen=True)
class DPState:
    """
    Bundle sizes, cross-valuation matrix and number of processed items.
    """

    W: tuple[int, ...]
    H: tuple[tuple[Any, ...], ...]
    k: int

    @classmethod
    def initial(cls, n: int) -> Self:
        """
        Builds the empty-allocation state.

        :param n: Number of agents.
        :return: State with all sizes and values 0.
        """

        return cls(W=(0,) * n, H=((0,) * n,) * n, k=0)

    @property
    def key(self) -> StateKey:
        """Layer dictionary key."""
        return self.W, self.H


class StateGraph:
    """
    Layers of reached states with predecessor records.
    """

    def __init__(self, initial: DPState):
        self.start: int = initial.k
        self.layers: list[dict[StateKey, tuple[StateKey, int] | None]] = [{initial.key: None}]

    @property
    def size(self) -> int:
        """Number of reached states across all layers."""
        return sum(len(layer) for layer in self.layers)

    def final_states(self) -> Iterator[DPState]:
        """
        Iterates the states of the last layer in the order they were reached.

        :yields: Final states.
        """

        k: int = self.start + len(self.layers) - 1
        for W, H in self.layers[-1]:
            yield DPState(W=W, H=H, k=k)

    def reconstruct(self, state: DPState) -> list[int]:
        """
        Follows predecessor records back to the initial state.

        :param state: A state of the last layer.
        :return: Agent assigned to each processed item, in processing order.
        """

        agents: list[int] = []
        key: StateKey = state.key
        for layer in reversed(self.layers[1:]):
            previous_key, agent = layer[key]
            agents.append(agent)
            key = previous_key

        agents.reverse()
        return agents


def _may_satisfy(sizes: Sequence[int], quota: _core.Quota, remaining: int) -> bool:
    deficit: int = 0
    for size, low, high in zip(sizes, quota.lower, quota.upper):
        if size > high:
            return False
        if size < low:
            deficit += low - size

    return deficit <= remaining


# pylint: disable=too-many-arguments,too-many-positional-arguments,too-many-locals
def explore(
    initial: DPState,
    columns: Sequence[Sequence[Any]],
    quota: _core.Quota | None = None,
    max_states: int = DEFAULT_MAX_STATES,
    prune: bool = True,
) -> StateGraph:
    """
    Reaches every state obtainable by assigning the given items one at a time.

    :param initial: State before any of `columns` is assigned.
    :param columns: Per item, the value every agent attaches to it, in processing order.
    :param quota: Quota used to discard states that can no longer satisfy it.
    :param max_states: Cap on the number of reached states.
    :param prune: Whether to discard quota-infeasible states while searching.
    :return: Reached-state graph.
    """

    graph: StateGraph = StateGraph(initial)
    n: int = len(initial.W)
    total: int = 1
    remaining: int = len(columns)

    for step, column in enumerate(columns):
        remaining -= 1
        reached: dict[StateKey, tuple[StateKey, int] | None] = {}

        for key in graph.layers[-1]:
            W, H = key
            for agent in range(n):
                sizes = W[:agent] + (W[agent] + 1,) + W[agent + 1 :]
                if prune and quota is not None and not _may_satisfy(sizes, quota, remaining):
                    continue

                values = tuple(
                    row[:agent] + (row[agent] + column[i],) + row[agent + 1 :]
                    for i, row in enumerate(H)
                )
                reached.setdefault((sizes, values), (key, agent))

        total += len(reached)
        if total > max_states:
            raise _exceptions.ResourceCapException(
                f"reached {total} states, exceeding the cap of {max_states}"
            )

        logger.debug("Layer %d: %d reached states", initial.k + step + 1, len(reached))
        graph.layers.append(reached)

    return graph


__all__: tuple[str, ...] = ("DPState", "StateGraph", "StateKey", "explore")
