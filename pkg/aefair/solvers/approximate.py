"""
Approximate quota-constrained AEF-1 via removing matrices and rounding

For every valid removing matrix the designated removal items are handed
out first, the remaining values are rounded up onto a grid of step
a_i/r so that reached states merge, and the reached-state DP runs over
the items left. A final state is accepted when every agent envies every
other by at most a_i/r after the matrix's removal. A NO answer is exact;
a returned allocation is (1 - 4/(mn))-AEF-1.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, NamedTuple, Self

from .. import _decorators as decorators
from .. import core as _core
from .. import exceptions as _exceptions
from .. import util as _util
from ..constants import DEFAULT, DEFAULT_MAX_MATRICES, DEFAULT_MAX_STATES, DEFAULT_TYPE, UNASSIGNED
from .base import Solver
from .states import DPState, StateGraph, explore

logger: logging.Logger = logging.getLogger(__name__)

# Removal item (None for no removal) and the agent holding it.
Entry = tuple[int | None, int]


def _pairs(n: int) -> Iterator[tuple[int, int]]:
    for i in range(n):
        for h in range(n):
            if i != h:
                yield i, h


@dataclass(frozen=True)
class RemovingMatrix:
    """
    Designated removal per ordered pair of agents.

    `entries[i][h]` is (g, l): when agent i compares its bundle with agent
    h's, item g is removed, and g is held by l, which is i or h.
    """

    entries: tuple[tuple[Entry, ...], ...]

    def __post_init__(self):
        n: int = len(self.entries)
        for i, row in enumerate(self.entries):
            if len(row) != n:
                raise _exceptions.InvalidParameterException("removing matrix must be square")

            for h, (item, label) in enumerate(row):
                if i == h and (item is not None or label != i):
                    raise _exceptions.InvalidParameterException(
                        f"diagonal entry {i} must be (None, {i})"
                    )
                if label not in (i, h):
                    raise _exceptions.InvalidParameterException(
                        f"entry ({i}, {h}) names owner {label}, expected {i} or {h}"
                    )

    @classmethod
    def from_pairs(cls, n: int, assignments: dict[tuple[int, int], Entry]) -> Self:
        """
        Builds a matrix, leaving unlisted pairs without removal.

        :param n: Number of agents.
        :param assignments: Entry per ordered pair.
        :return: The matrix.
        """

        return cls(
            tuple(
                tuple(assignments.get((i, h), (None, i)) for h in range(n)) for i in range(n)
            )
        )

    @property
    def n(self) -> int:
        """Number of agents."""
        return len(self.entries)

    def entry(self, i: int, h: int) -> Entry:
        """
        Looks up the removal for agent i comparing against agent h.

        :param i: Comparing agent.
        :param h: Compared agent.
        :return: Item and holder.
        """

        return self.entries[i][h]

    @property
    def is_valid(self) -> bool:
        """Whether no item is designated to two different holders."""
        holders: dict[int, int] = {}
        for row in self.entries:
            for item, label in row:
                if item is not None and holders.setdefault(item, label) != label:
                    return False

        return True

    def pre_allocated(self) -> dict[int, int]:
        """
        Collects the items the matrix forces onto a holder.

        :return: Holder per designated item, in first-appearance order.
        """

        holders: dict[int, int] = {}
        for row in self.entries:
            for item, label in row:
                if item is not None:
                    holders.setdefault(item, label)

        return holders

    def removing_items(self, i: int) -> frozenset[int]:
        """
        Collects the items agent i removes in some comparison.

        :param i: Agent index.
        :return: Designated items of row i.
        """

        return frozenset(item for item, _ in self.entries[i] if item is not None)


def enumerate_removing_matrices(n: int, m: int) -> Iterator[RemovingMatrix]:
    """
    Yields every valid removing matrix exactly once.

    Pairs are taken in row-major order and each pair's options in the
    order no removal, (g0, i), (g0, h), (g1, i), and so on. Branches that
    would give an item two holders are cut as soon as they arise.

    :param n: Number of agents.
    :param m: Number of items.
    :yields: Valid matrices.
    """

    pairs: list[tuple[int, int]] = list(_pairs(n))
    chosen: dict[tuple[int, int], Entry] = {}
    holders: dict[int, int] = {}
    uses: dict[int, int] = {}

    def descend(index: int) -> Iterator[RemovingMatrix]:
        if index == len(pairs):
            yield RemovingMatrix.from_pairs(n, chosen)
            return

        i, h = pairs[index]
        chosen[i, h] = (None, i)
        yield from descend(index + 1)

        for item in range(m):
            for label in (i, h):
                if holders.get(item, label) != label:
                    continue

                chosen[i, h] = (item, label)
                holders[item] = label
                uses[item] = uses.get(item, 0) + 1

                yield from descend(index + 1)

                uses[item] -= 1
                if not uses[item]:
                    del uses[item]
                    del holders[item]

        del chosen[i, h]

    yield from descend(0)


@decorators.rational_argument("x", "a")
def round_value(x: Fraction, a: Fraction, r: int) -> Fraction:
    """
    Rounds a value up to the next multiple of a/r.

    Zero stays zero, and with a = 0 the value is returned unchanged.

    :param x: Non-negative value.
    :param a: Grid scale.
    :param r: Positive rounding parameter.
    :return: Smallest multiple of a/r that is at least x.
    """

    if r < 1:
        raise _exceptions.InvalidParameterException(f"rounding parameter must be positive, got {r}")

    if x == 0 or a == 0:
        return x

    step: Fraction = a / r
    return math.ceil(x / step) * step


@dataclass(frozen=True)
class RoundedProfile:
    """
    Valuations rounded for one removing matrix.
    """

    base: _core.Instance
    matrix: RemovingMatrix
    r: int
    a: tuple[Fraction, ...]
    values: tuple[tuple[Fraction, ...], ...]

    def tolerance(self, i: int) -> Fraction:
        """
        Envy allowed for agent i after removal.

        :param i: Agent index.
        :return: a_i / r, or 0 when agent i has nothing to round.
        """

        if not self.a[i]:
            return Fraction(0)

        return self.a[i] / self.r

    def kept_items(self, i: int) -> tuple[int, ...]:
        """
        Items agent i never removes.

        :param i: Agent index.
        :return: Item indices in order.
        """

        removing: frozenset[int] = self.matrix.removing_items(i)
        return tuple(g for g in range(self.base.m) if g not in removing)

    def kept_average(self, i: int) -> Fraction:
        """
        Agent i's average rounded value over the items it never removes.

        :param i: Agent index.
        :return: Average, 0 for no items.
        """

        kept: tuple[int, ...] = self.kept_items(i)
        if not kept:
            return Fraction(0)

        return sum((self.values[i][g] for g in kept), Fraction(0)) / len(kept)

    def as_instance(self) -> _core.Instance:
        """Rounded values as an instance."""
        return _core.Instance(values=self.values, item_labels=self.base.item_labels)


def round_valuations(inst: _core.Instance, matrix: RemovingMatrix) -> RoundedProfile:
    """
    Rounds every agent's values outside of its removing items.

    :param inst: Instance.
    :param matrix: Valid removing matrix over the instance's agents and items.
    :return: Rounded profile with r = m^2 n^2.
    """

    if matrix.n != inst.n:
        raise _exceptions.InvalidParameterException(
            f"removing matrix covers {matrix.n} agents, instance has {inst.n}"
        )

    if any(item >= inst.m for item in matrix.pre_allocated()):
        raise _exceptions.InvalidParameterException("removing matrix names an unknown item")

    r: int = inst.m**2 * inst.n**2
    scales: list[Fraction] = []
    rows: list[tuple[Fraction, ...]] = []

    for i, row in enumerate(inst.values):
        removing: frozenset[int] = matrix.removing_items(i)
        a: Fraction = max(
            (value for g, value in enumerate(row) if g not in removing), default=Fraction(0)
        )
        scales.append(a)
        rows.append(
            tuple(
                value if g in removing or not a else round_value(value, a, r)
                for g, value in enumerate(row)
            )
        )

    return RoundedProfile(
        base=inst, matrix=matrix, r=r, a=tuple(scales), values=tuple(rows)
    )


def round_instance_uniform(inst: _core.Instance, a: Fraction | int | str, r: int) -> _core.Instance:
    """
    Rounds every positive value up to a multiple of one common step a/r.

    :param inst: Instance.
    :param a: Positive grid scale.
    :param r: Positive rounding parameter.
    :return: Rounded instance.
    """

    if _util.as_rational(a) <= 0:
        raise _exceptions.InvalidParameterException(f"grid scale must be positive, got {a}")

    return _core.Instance(
        values=tuple(tuple(round_value(value, a, r) for value in row) for row in inst.values),
        item_labels=inst.item_labels,
    )


def approximation_ratio(m: int, n: int) -> Fraction:
    """
    Computes the α attached to allocations returned by `dp_approx_quota`.

    :param m: Number of items, at least 1.
    :param n: Number of agents, at least 1.
    :return: 1 - 4/(mn); not positive when mn <= 4.
    """

    if m < 1 or n < 1:
        raise _exceptions.InvalidParameterException("approximation ratio needs m and n of at least 1")

    return 1 - Fraction(4, m * n)


def _average(total: Fraction, size: int) -> Fraction:
    return total / size if size else Fraction(0)


def _bounded_envy(state: DPState, profile: RoundedProfile) -> bool:
    """
    Applies each pair's designated removal to the state's sums.
    """

    for i, h in _pairs(len(state.W)):
        item, label = profile.matrix.entry(i, h)
        own, own_size = state.H[i][i], state.W[i]
        other, other_size = state.H[i][h], state.W[h]

        if item is not None:
            if label == i:
                own, own_size = own - profile.values[i][item], own_size - 1
            else:
                other, other_size = other - profile.values[i][item], other_size - 1

        if _average(own, own_size) < _average(other, other_size) - profile.tolerance(i):
            return False

    return True


def _bounded_envy_any_removal(profile: RoundedProfile, allocation: _core.Allocation) -> bool:
    """
    Accepts each pair under its best removal rather than the designated one.
    """

    bundles = allocation.bundles(profile.base.n)
    for i, h in _pairs(profile.base.n):
        row = profile.values[i]
        own_items, other_items = bundles[i], bundles[h]
        own = sum((row[g] for g in own_items), Fraction(0))
        other = sum((row[g] for g in other_items), Fraction(0))
        slack: Fraction = profile.tolerance(i)

        comparisons: list[tuple[Fraction, Fraction]] = [
            (_average(own - row[g], len(own_items) - 1), _average(other, len(other_items)))
            for g in own_items
        ]
        comparisons += [
            (_average(own, len(own_items)), _average(other - row[g], len(other_items) - 1))
            for g in other_items
        ]
        if not own_items and not other_items:
            comparisons.append((Fraction(0), Fraction(0)))

        if not any(mine >= theirs - slack for mine, theirs in comparisons):
            return False

    return True


class AcceptedState(NamedTuple):
    """
    Final state accepted for one removing matrix, with its allocation.
    """

    state: DPState
    profile: RoundedProfile
    allocation: _core.Allocation


# pylint: disable=too-many-arguments,too-many-positional-arguments,too-many-locals
def accepted_states(
    inst: _core.Instance,
    matrix: RemovingMatrix,
    quota: _core.Quota,
    max_states: int = DEFAULT_MAX_STATES,
    prune: bool = True,
    free_removal: bool = False,
) -> Iterator[AcceptedState]:
    """
    Runs the rounded DP for one removing matrix.

    :param inst: Instance.
    :param matrix: Valid removing matrix.
    :param quota: Quota over the instance's agents.
    :param max_states: Cap on reached states.
    :param prune: Whether to discard quota-infeasible states while searching.
    :param free_removal: Also accept states whose allocation passes under any single removal.
    :yields: Accepted final states in the order they were reached.
    """

    profile: RoundedProfile = round_valuations(inst, matrix)
    n, m = inst.n, inst.m
    pre_allocated: dict[int, int] = matrix.pre_allocated()

    sizes: list[int] = [0] * n
    totals: list[list[Fraction]] = [[Fraction(0)] * n for _ in range(n)]
    for item, holder in pre_allocated.items():
        sizes[holder] += 1
        for i in range(n):
            totals[i][holder] += profile.values[i][item]

    initial: DPState = DPState(tuple(sizes), tuple(tuple(row) for row in totals), 0)
    free_items: list[int] = [g for g in range(m) if g not in pre_allocated]
    columns: list[tuple[Fraction, ...]] = [
        tuple(profile.values[i][g] for i in range(n)) for g in free_items
    ]

    graph: StateGraph = explore(initial, columns, quota, max_states, prune)
    logger.debug("Matrix %s reached %d states", matrix.entries, graph.size)

    for state in graph.final_states():
        if quota.admits(state.W) is not None:
            continue

        designated: bool = _bounded_envy(state, profile)
        if not designated and not free_removal:
            continue

        owner: list[int] = [UNASSIGNED] * m
        for item, holder in pre_allocated.items():
            owner[item] = holder
        for item, agent in zip(free_items, graph.reconstruct(state)):
            owner[item] = agent

        allocation: _core.Allocation = _core.Allocation(tuple(owner))
        if designated or _bounded_envy_any_removal(profile, allocation):
            yield AcceptedState(state, profile, allocation)


# pylint: disable=too-many-arguments,too-many-positional-arguments
def dp_approx_quota(
    inst: _core.Instance,
    quota: _core.Quota,
    max_states: int = DEFAULT_MAX_STATES,
    max_matrices: int = DEFAULT_MAX_MATRICES,
    prune: bool = True,
    free_removal: bool = False,
) -> _core.Allocation | None:
    """
    Searches removing matrices in order for an accepted rounded state.

    :param inst: Instance.
    :param quota: Quota over the instance's agents.
    :param max_states: Cap on reached states per removing matrix.
    :param max_matrices: Cap on removing matrices examined.
    :param prune: Whether to discard quota-infeasible states while searching.
    :param free_removal: Also accept states passing under any single removal.
    :return: Allocation from the first matrix with an accepted state, or None.
    """

    if quota.n != inst.n:
        raise _exceptions.InvalidParameterException(
            f"quota covers {quota.n} agents, instance has {inst.n}"
        )

    if not quota.is_feasible(inst.m):
        logger.info("Quota cannot be met by %d items", inst.m)
        return None

    for count, matrix in enumerate(enumerate_removing_matrices(inst.n, inst.m), start=1):
        if count > max_matrices:
            raise _exceptions.ResourceCapException(
                f"examined {max_matrices} removing matrices without a verdict"
            )

        hit: AcceptedState | None = next(
            accepted_states(inst, matrix, quota, max_states, prune, free_removal), None
        )
        if hit is not None:
            logger.info("Removing matrix %d accepted allocation %s", count, hit.allocation.owner)
            return hit.allocation

    return None


class ApproxDpSolver(Solver):
    """
    Approximate DP with a quota.
    """

    name: str = "dp-approx"
    requires_quota: bool = True
    claim: str = "alpha-aef1"

    def __init__(self, *args, free_removal: bool = False, **kwargs):
        """
        Initializes the solver.

        :param args: Positional arguments for `Solver`.
        :param free_removal: Also accept states passing under any single removal.
        :param kwargs: Keyword arguments for `Solver`.
        """

        super().__init__(*args, **kwargs)
        self.free_removal: bool = free_removal

    # pylint: disable=too-many-arguments,too-many-positional-arguments
    @decorators.default(
        max_states="max_states",
        max_matrices="max_matrices",
        prune="prune",
        free_removal="free_removal",
    )
    def solve(
        self,
        inst: _core.Instance,
        quota: _core.Quota | None = None,
        max_states: int | DEFAULT_TYPE = DEFAULT,
        max_matrices: int | DEFAULT_TYPE = DEFAULT,
        prune: bool | DEFAULT_TYPE = DEFAULT,
        free_removal: bool | DEFAULT_TYPE = DEFAULT,
    ) -> _core.Allocation | None:
        return dp_approx_quota(
            inst,
            quota,
            max_states=max_states,
            max_matrices=max_matrices,
            prune=prune,
            free_removal=free_removal,
        )

    def guarantee(self, inst: _core.Instance) -> Fraction | None:
        if inst.m < 1:
            return None

        return approximation_ratio(inst.m, inst.n)


__all__: tuple[str, ...] = (
    "Entry",
    "RemovingMatrix",
    "RoundedProfile",
    "AcceptedState",
    "enumerate_removing_matrices",
    "round_value",
    "round_valuations",
    "round_instance_uniform",
    "approximation_ratio",
    "accepted_states",
    "dp_approx_quota",
    "ApproxDpSolver",
)
