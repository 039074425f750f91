"""
Fairness decision procedures

Each predicate is a literal expansion of its definition: every ordered
pair of agents (i, h) is examined, and for the "up to one item" notions
every item of A_i ∪ A_h is tried as the removed item. Removing an item
only affects the bundle that contains it. A pair whose bundles are both
empty has no item to remove and is compared as is (0 against 0).
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, NamedTuple

from . import _decorators as decorators
from . import core as _core
from . import exceptions as _exceptions
from .constants import UNBOUNDED, UNBOUNDED_TYPE

logger: logging.Logger = logging.getLogger(__name__)

Certificate = dict[tuple[int, int], int | None]


@dataclass(frozen=True)
class EnvyWitness:
    """
    Evidence that an ordered pair breaks a fairness notion.

    For AEF, `removed_item` is None and `margin` is u_i(A_h) - u_i(A_i).
    For AEF-1, every removal fails; `removed_item` is the removal leaving
    the least residual envy and `margin` is that residual.
    """

    envious: int
    envied: int
    removed_item: int | None
    margin: Fraction


class _Tabulation(NamedTuple):
    bundles: tuple[frozenset[int], ...]
    sizes: tuple[int, ...]
    # totals[i][h] = v_i(A_h)
    totals: tuple[tuple[Fraction, ...], ...]


def _tabulate(inst: _core.Instance, allocation: _core.Allocation) -> _Tabulation:
    bundles = allocation.bundles(inst.n)
    totals = tuple(
        tuple(sum((row[g] for g in bundle), Fraction(0)) for bundle in bundles)
        for row in inst.values
    )

    return _Tabulation(bundles, tuple(len(bundle) for bundle in bundles), totals)


def _average(total: Fraction, size: int) -> Fraction:
    return total / size if size else Fraction(0)


def _pairs(n: int) -> Iterator[tuple[int, int]]:
    for i in range(n):
        for h in range(n):
            if i != h:
                yield i, h


def _removals(
    inst: _core.Instance, table: _Tabulation, i: int, h: int
) -> Iterator[tuple[int | None, Fraction, Fraction]]:
    """
    Enumerates the comparisons agent i may make against agent h.

    :return: Iterator of (removed item, u_i(A_i minus g), u_i(A_h minus g)).
    """

    row = inst.values[i]
    own, other = table.totals[i][i], table.totals[i][h]
    own_size, other_size = table.sizes[i], table.sizes[h]

    for g in sorted(table.bundles[i] | table.bundles[h]):
        if g in table.bundles[i]:
            yield g, _average(own - row[g], own_size - 1), _average(other, other_size)
        else:
            yield g, _average(own, own_size), _average(other - row[g], other_size - 1)

    if not own_size and not other_size:
        yield None, Fraction(0), Fraction(0)


@decorators.complete_allocation()
def is_aef(
    inst: _core.Instance, allocation: _core.Allocation
) -> tuple[bool, EnvyWitness | None]:
    """
    Decides average envy-freeness.

    :param inst: Instance.
    :param allocation: Complete allocation.
    :return: Verdict, and the lexicographically first envious pair on failure.
    """

    table = _tabulate(inst, allocation)
    for i, h in _pairs(inst.n):
        own = _average(table.totals[i][i], table.sizes[i])
        other = _average(table.totals[i][h], table.sizes[h])
        if own < other:
            return False, EnvyWitness(i, h, None, other - own)

    return True, None


@decorators.complete_allocation()
def is_aef1(
    inst: _core.Instance, allocation: _core.Allocation
) -> tuple[bool, Certificate | EnvyWitness]:
    """
    Decides average envy-freeness up to one item.

    :param inst: Instance.
    :param allocation: Complete allocation.
    :return: Verdict with one certifying removal per ordered pair, or a witness.
    """

    table = _tabulate(inst, allocation)
    certificate: Certificate = {}

    for i, h in _pairs(inst.n):
        closest: tuple[Fraction, int | None] | None = None
        for g, own, other in _removals(inst, table, i, h):
            if own >= other:
                certificate[i, h] = g
                break

            if closest is None or other - own < closest[0]:
                closest = (other - own, g)
        else:
            margin, item = closest
            return False, EnvyWitness(i, h, item, margin)

    return True, certificate


@decorators.rational_argument("eps")
@decorators.complete_allocation()
def is_eps_aef1(inst: _core.Instance, allocation: _core.Allocation, eps: Fraction) -> bool:
    """
    Decides ε-error AEF-1.

    :param inst: Instance.
    :param allocation: Complete allocation.
    :param eps: Additive slack, at least 0.
    :return: Whether every pair has a removal with u_i(A_i - g) >= u_i(A_h - g) - ε.
    """

    if eps < 0:
        raise _exceptions.InvalidParameterException(f"eps must be non-negative, got {eps}")

    table = _tabulate(inst, allocation)
    return all(
        any(own >= other - eps for _, own, other in _removals(inst, table, i, h))
        for i, h in _pairs(inst.n)
    )


@decorators.rational_argument("alpha")
@decorators.complete_allocation()
def is_alpha_aef1(inst: _core.Instance, allocation: _core.Allocation, alpha: Fraction) -> bool:
    """
    Decides α-AEF-1.

    :param inst: Instance.
    :param allocation: Complete allocation.
    :param alpha: Ratio in (0, 1].
    :return: Whether every pair has a removal with u_i(A_i - g) >= α·u_i(A_h - g).
    """

    if not 0 < alpha <= 1:
        raise _exceptions.InvalidParameterException(f"alpha must lie in (0, 1], got {alpha}")

    table = _tabulate(inst, allocation)
    return all(
        any(own >= alpha * other for _, own, other in _removals(inst, table, i, h))
        for i, h in _pairs(inst.n)
    )


@decorators.complete_allocation()
def max_alpha(inst: _core.Instance, allocation: _core.Allocation) -> Fraction | UNBOUNDED_TYPE:
    """
    Finds the tightest α for which the allocation is α-AEF-1.

    A pair with some removal leaving u_i(A_h - g) = 0 holds for every α
    and does not constrain the result.

    :param inst: Instance.
    :param allocation: Complete allocation.
    :return: Minimum over pairs of the best removal ratio, or UNBOUNDED.
    """

    table = _tabulate(inst, allocation)
    result: Fraction | UNBOUNDED_TYPE = UNBOUNDED

    for i, h in _pairs(inst.n):
        best: Fraction | None = None
        for _, own, other in _removals(inst, table, i, h):
            if other == 0:
                break

            ratio: Fraction = own / other
            if best is None or ratio > best:
                best = ratio
        else:
            if result is UNBOUNDED or best < result:
                result = best

    return result


def normalize(inst: _core.Instance) -> _core.Instance:
    """
    Scales the whole profile so that the largest value is 1.

    :param inst: Instance with at least one positive value.
    :return: Scaled instance.
    """

    largest: Fraction = max((value for row in inst.values for value in row), default=Fraction(0))
    if largest == 0:
        raise _exceptions.InvalidInstanceException("cannot normalize an all-zero instance")

    return _core.Instance(
        values=tuple(tuple(value / largest for value in row) for row in inst.values),
        item_labels=inst.item_labels,
        metadata=dict(inst.metadata),
    )


__all__: tuple[str, ...] = (
    "Certificate",
    "EnvyWitness",
    "is_aef",
    "is_aef1",
    "is_eps_aef1",
    "is_alpha_aef1",
    "max_alpha",
    "normalize",
)
