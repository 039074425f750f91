"""
Exact-arithmetic data model

Instances, allocations and quotas are immutable values. Every valuation
is held as a `fractions.Fraction`, so sums, averages and comparisons are
exact regardless of magnitude.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Collection, Iterable, Sequence, Self

from . import exceptions as _exceptions
from . import util as _util
from .constants import UNASSIGNED

logger: logging.Logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Instance:
    """
    Additive valuation profile of n agents over m indivisible items.

    `values[i][g]` is agent i's value for item g.
    """

    values: tuple[tuple[Fraction, ...], ...]
    item_labels: tuple[str, ...] | None = None
    metadata: dict[str, Any] = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        if not self.values:
            raise _exceptions.InvalidInstanceException("instance requires at least one agent")

        rows: list[tuple[Fraction, ...]] = []
        width: int = len(self.values[0])
        for i, row in enumerate(self.values):
            if len(row) != width:
                raise _exceptions.InvalidInstanceException(
                    f"row {i} has {len(row)} values, expected {width}"
                )

            converted: tuple[Fraction, ...] = tuple(_util.as_rational(value) for value in row)
            for g, value in enumerate(converted):
                if value < 0:
                    raise _exceptions.InvalidInstanceException(
                        f"negative value at values[{i}][{g}]"
                    )
            rows.append(converted)

        object.__setattr__(self, "values", tuple(rows))

        if self.item_labels is not None:
            labels: tuple[str, ...] = tuple(self.item_labels)
            if len(labels) != width:
                raise _exceptions.InvalidInstanceException(
                    f"{len(labels)} item labels for {width} items"
                )
            object.__setattr__(self, "item_labels", labels)

    @classmethod
    def from_rows(
        cls,
        rows: Iterable[Iterable[Any]],
        item_labels: Iterable[str] | None = None,
        metadata: dict[str, Any] | None = None,
    ) -> Self:
        """
        Builds an instance from nested iterables of exact literals.

        :param rows: One row of item values per agent.
        :param item_labels: Optional display names for items.
        :param metadata: Optional generator metadata.
        :return: The instance.
        """

        return cls(
            values=tuple(tuple(row) for row in rows),
            item_labels=None if item_labels is None else tuple(item_labels),
            metadata=dict(metadata or {}),
        )

    @property
    def n(self) -> int:
        """Number of agents."""
        return len(self.values)

    @property
    def m(self) -> int:
        """Number of items."""
        return len(self.values[0])

    @property
    def is_binary(self) -> bool:
        """Whether every value is 0 or 1."""
        return all(value in (0, 1) for row in self.values for value in row)

    @property
    def is_identical(self) -> bool:
        """Whether all agents share one valuation."""
        return all(row == self.values[0] for row in self.values)


@dataclass(frozen=True)
class Allocation:
    """
    Assignment of items to agents, stored as one owner entry per item.

    An entry equal to `UNASSIGNED` marks an item not yet given away.
    """

    owner: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "owner", tuple(self.owner))

    @classmethod
    def from_bundles(cls, bundles: Sequence[Collection[int]], m: int) -> Self:
        """
        Builds an allocation from per-agent bundles.

        Items appearing in no bundle are left unassigned.

        :param bundles: Item indices held by each agent.
        :param m: Number of items.
        :return: The allocation.
        """

        owner: list[int] = [UNASSIGNED] * m
        for agent, bundle in enumerate(bundles):
            for item in bundle:
                if owner[item] != UNASSIGNED:
                    raise _exceptions.InvalidParameterException(
                        f"item {item} appears in more than one bundle"
                    )
                owner[item] = agent

        return cls(tuple(owner))

    @property
    def is_complete(self) -> bool:
        """Whether every item has an owner."""
        return UNASSIGNED not in self.owner

    def bundles(self, n: int) -> tuple[frozenset[int], ...]:
        """
        Derives the bundle of every agent.

        :param n: Number of agents.
        :return: One frozenset of item indices per agent.
        """

        members: list[set[int]] = [set() for _ in range(n)]
        for item, agent in enumerate(self.owner):
            if agent != UNASSIGNED:
                members[agent].add(item)

        return tuple(frozenset(bundle) for bundle in members)

    def sizes(self, n: int) -> tuple[int, ...]:
        """
        Counts the items held by every agent.

        :param n: Number of agents.
        :return: Bundle sizes.
        """

        counts: list[int] = [0] * n
        for agent in self.owner:
            if agent != UNASSIGNED:
                counts[agent] += 1

        return tuple(counts)


@dataclass(frozen=True)
class Quota:
    """
    Per-agent lower and upper bounds on bundle size.
    """

    lower: tuple[int, ...]
    upper: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "lower", tuple(self.lower))
        object.__setattr__(self, "upper", tuple(self.upper))

        if len(self.lower) != len(self.upper):
            raise _exceptions.InvalidParameterException(
                "quota lower and upper bounds differ in length"
            )

        for i, (low, high) in enumerate(zip(self.lower, self.upper)):
            if isinstance(low, bool) or isinstance(high, bool):
                raise _exceptions.InvalidParameterException("quota bounds must be integers")
            if low < 0 or high < 0:
                raise _exceptions.InvalidParameterException(f"negative quota bound for agent {i}")
            if low > high:
                raise _exceptions.InvalidParameterException(
                    f"quota lower bound exceeds upper bound for agent {i}"
                )

    @classmethod
    def exact(cls, sizes: Iterable[int]) -> Self:
        """
        Builds a quota fixing every bundle size.

        :param sizes: Required bundle size per agent.
        :return: The exact quota.
        """

        sizes = tuple(sizes)
        return cls(lower=sizes, upper=sizes)

    @classmethod
    def unbounded(cls, n: int, m: int) -> Self:
        """
        Builds the quota every allocation of m items satisfies.

        :param n: Number of agents.
        :param m: Number of items.
        :return: The quota.
        """

        return cls(lower=(0,) * n, upper=(m,) * n)

    @property
    def n(self) -> int:
        """Number of agents constrained."""
        return len(self.lower)

    @property
    def is_exact(self) -> bool:
        """Whether every lower bound equals its upper bound."""
        return self.lower == self.upper

    def is_feasible(self, m: int) -> bool:
        """
        Checks the counting precondition for any allocation of m items.

        :param m: Number of items.
        :return: Whether sum(lower) <= m <= sum(upper).
        """

        return sum(self.lower) <= m <= sum(self.upper)

    def admits(self, sizes: Sequence[int]) -> int | None:
        """
        Finds the first agent whose bundle size breaks the quota.

        :param sizes: Bundle size per agent.
        :return: Violating agent index, or None.
        """

        for agent, size in enumerate(sizes):
            if not self.lower[agent] <= size <= self.upper[agent]:
                return agent

        return None


def _check_agent(inst: Instance, i: int) -> None:
    if not 0 <= i < inst.n:
        raise _exceptions.AgentIndexException(f"agent index {i} out of range for {inst.n} agents")


def bundle_value(inst: Instance, i: int, items: Iterable[int]) -> Fraction:
    """
    Computes an agent's additive value for a set of items.

    :param inst: Instance.
    :param i: Agent index.
    :param items: Item indices.
    :return: Exact sum of the agent's item values.
    """

    _check_agent(inst, i)

    row: tuple[Fraction, ...] = inst.values[i]
    total: Fraction = Fraction(0)
    for item in items:
        if not 0 <= item < inst.m:
            raise _exceptions.AgentIndexException(
                f"item index {item} out of range for {inst.m} items"
            )
        total += row[item]

    return total


def average_value(inst: Instance, i: int, items: Collection[int]) -> Fraction:
    """
    Computes an agent's average value per item of a set.

    The empty set averages to 0.

    :param inst: Instance.
    :param i: Agent index.
    :param items: Item indices.
    :return: Exact average.
    """

    total: Fraction = bundle_value(inst, i, items)
    if not items:
        return Fraction(0)

    return total / len(items)


def validate_allocation(inst: Instance, allocation: Allocation) -> list[str]:
    """
    Lists every way an allocation fails to be a complete allocation of the instance.

    :param inst: Instance.
    :param allocation: Allocation to inspect.
    :return: Violation messages; empty when the allocation is valid.
    """

    violations: list[str] = []
    if len(allocation.owner) != inst.m:
        violations.append(
            f"length mismatch: {len(allocation.owner)} owners for {inst.m} items"
        )

    for item, agent in enumerate(allocation.owner):
        if agent == UNASSIGNED:
            violations.append(f"unassigned item at owner[{item}]")
        elif isinstance(agent, bool) or not isinstance(agent, int) or not 0 <= agent < inst.n:
            violations.append(f"owner index out of range at owner[{item}]")

    return violations


def satisfies_quota(allocation: Allocation, quota: Quota) -> tuple[bool, int | None]:
    """
    Checks bundle sizes against a quota.

    :param allocation: Complete allocation.
    :param quota: Quota over the same agents.
    :return: Whether the quota holds, and the first violating agent if not.
    """

    if not allocation.is_complete:
        raise _exceptions.IncompleteAllocationException("quota check requires a complete allocation")

    for agent in allocation.owner:
        if not 0 <= agent < quota.n:
            raise _exceptions.IncompleteAllocationException(
                f"owner {agent} outside of the {quota.n} agents covered by the quota"
            )

    violating: int | None = quota.admits(allocation.sizes(quota.n))
    return violating is None, violating


__all__: tuple[str, ...] = (
    "Instance",
    "Allocation",
    "Quota",
    "bundle_value",
    "average_value",
    "validate_allocation",
    "satisfies_quota",
)
