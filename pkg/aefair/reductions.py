"""
Instance generators

Hardness gadgets built from partition-style inputs, the constructions
that turn a partition into a fair allocation of the gadget, independent
subset-enumeration oracles for the source problems, and seeded random
instances.
"""

import itertools
import logging
import random
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import core as _core
from . import exceptions as _exceptions
from . import util as _util

logger: logging.Logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PartitionInput:
    """
    Multiset of positive integers to be split into two equal-sum halves.
    """

    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))

        if not self.values:
            raise _exceptions.InvalidParameterException("partition input must not be empty")

        for index, value in enumerate(self.values):
            if isinstance(value, bool) or not isinstance(value, int) or value <= 0:
                raise _exceptions.InvalidParameterException(
                    f"partition input must hold positive integers, got {value!r} at X[{index}]"
                )

    @property
    def total(self) -> int:
        """Sum of the multiset."""
        return sum(self.values)

    @property
    def target(self) -> Fraction:
        """Half of the sum; each side of a solution sums to this."""
        return Fraction(self.total, 2)

    def assumptions_hold(self, k: int) -> bool:
        """
        Checks the size assumptions the gadget correctness argument relies on.

        :param k: Size parameter of the gadget.
        :return: Whether k >= 4 and T >= 4.
        """

        return k >= 4 and self.target >= 4


def _as_partition_input(values: PartitionInput | Iterable[int]) -> PartitionInput:
    if isinstance(values, PartitionInput):
        return values

    return PartitionInput(tuple(values))


################################################################################
# Two agents, identical valuations: AEF existence                              #
################################################################################


def gen_from_partition(values: PartitionInput | Iterable[int]) -> _core.Instance:
    """
    Builds the two-agent AEF gadget of a partition input.

    For every x_i there is a small item worth B^i and a large item worth
    B^i + x_i, where B = T^2 k^2. Items are ordered small 1, large 1,
    small 2, large 2, and so on.

    :param values: Partition input.
    :return: Instance with two identical agents and 2k items.
    """

    source: PartitionInput = _as_partition_input(values)
    k: int = len(source.values)
    T: Fraction = source.target
    base: Fraction = T**2 * k**2

    row: list[Fraction] = []
    labels: list[str] = []
    for i, x in enumerate(source.values, start=1):
        row += [base**i, base**i + x]
        labels += [f"s{i}", f"l{i}"]

    valid: bool = source.assumptions_hold(k)
    if not valid:
        logger.info("Partition gadget built outside of its size assumptions (k=%d, T=%s)", k, T)

    return _core.Instance(
        values=(tuple(row), tuple(row)),
        item_labels=tuple(labels),
        metadata={"gadget": {"name": "partition", "k": k, "T": T, "valid_assumptions": valid}},
    )


def partition_allocation(
    values: PartitionInput | Iterable[int], subset: Iterable[int]
) -> _core.Allocation:
    """
    Allocates the partition gadget from one side of a partition.

    Agent 0 takes the large item of every index in `subset` and the small
    item of every other index; agent 1 takes the rest.

    :param values: Partition input.
    :param subset: Indices into the input forming one side.
    :return: Complete allocation of the gadget.
    """

    source: PartitionInput = _as_partition_input(values)
    chosen: frozenset[int] = frozenset(subset)
    owner: list[int] = []
    for i in range(len(source.values)):
        owner += [1, 0] if i in chosen else [0, 1]

    return _core.Allocation(tuple(owner))


################################################################################
# EF with binary valuations: AEF-1 with an exact quota                         #
################################################################################


def gen_ef_embedding(ef_inst: _core.Instance) -> tuple[_core.Instance, _core.Quota]:
    """
    Pads a binary instance with worthless items and fixes all bundle sizes.

    :param ef_inst: Binary instance with n agents and m items.
    :return: Instance with (n-1)m extra zero items, and the quota exact m per agent.
    """

    if not ef_inst.is_binary:
        raise _exceptions.NonBinaryInstanceException("embedding requires a binary instance")

    n, m = ef_inst.n, ef_inst.m
    dummies: int = (n - 1) * m
    labels: tuple[str, ...] | None = None
    if ef_inst.item_labels is not None:
        labels = ef_inst.item_labels + tuple(f"d{j}" for j in range(1, dummies + 1))

    inst: _core.Instance = _core.Instance(
        values=tuple(row + (Fraction(0),) * dummies for row in ef_inst.values),
        item_labels=labels,
        metadata={"gadget": {"name": "ef-embedding", "n": n, "m": m}},
    )

    return inst, _core.Quota.exact((m,) * n)


def embed_allocation(ef_inst: _core.Instance, allocation: _core.Allocation) -> _core.Allocation:
    """
    Extends an allocation of a binary instance to its embedding.

    Worthless items are handed out in order, topping every bundle up to m.

    :param ef_inst: Binary instance the embedding was built from.
    :param allocation: Complete allocation of `ef_inst`.
    :return: Complete allocation of the embedding meeting its quota.
    """

    n, m = ef_inst.n, ef_inst.m
    owner: list[int] = list(allocation.owner)
    for agent, size in enumerate(allocation.sizes(n)):
        owner += [agent] * (m - size)

    return _core.Allocation(tuple(owner))


def is_envy_free(inst: _core.Instance, allocation: _core.Allocation) -> bool:
    """
    Decides envy-freeness on total values.

    :param inst: Instance.
    :param allocation: Complete allocation.
    :return: Whether v_i(A_i) >= v_i(A_h) for every pair.
    """

    bundles = allocation.bundles(inst.n)
    return all(
        _core.bundle_value(inst, i, bundles[i]) >= _core.bundle_value(inst, i, bundles[h])
        for i in range(inst.n)
        for h in range(inst.n)
    )


################################################################################
# Equal-cardinality partition: AEF-1 with an exact quota, n >= 3               #
################################################################################


def gen_from_eqcard_partition(
    values: PartitionInput | Iterable[int], n_target: int = 3
) -> tuple[_core.Instance, _core.Quota]:
    """
    Builds the three-agent AEF-1 gadget of an equal-cardinality partition input.

    With |X| = 2k, T = sum/2 and T' = T + k^3 T^2, items are 2k items
    worth x_j + k^2 T^2, then k+1 copies of b worth (k+2)T'/(k+1)^2, then
    five worthless items. Agents beyond the third value everything at 0
    and must receive nothing.

    :param values: Partition input of even size.
    :param n_target: Number of agents, at least 3.
    :return: Instance and the exact quota (k+2 for the first three agents, 0 otherwise).
    """

    source: PartitionInput = _as_partition_input(values)
    if len(source.values) % 2:
        raise _exceptions.InvalidParameterException(
            f"equal-cardinality partition needs an even number of values, got {len(source.values)}"
        )
    if n_target < 3:
        raise _exceptions.InvalidParameterException(f"gadget needs at least 3 agents, got {n_target}")

    k: int = len(source.values) // 2
    T: Fraction = source.target
    T_prime: Fraction = T + k**3 * T**2
    b: Fraction = (k + 2) * T_prime / (k + 1) ** 2

    row: tuple[Fraction, ...] = (
        tuple(x + k**2 * T**2 for x in source.values) + (b,) * (k + 1) + (Fraction(0),) * 5
    )
    labels: tuple[str, ...] = (
        tuple(f"g{j}" for j in range(1, 2 * k + 1))
        + tuple(f"b{j}" for j in range(1, k + 2))
        + tuple(f"z{j}" for j in range(1, 6))
    )

    rows: tuple[tuple[Fraction, ...], ...] = (row,) * 3 + (
        (Fraction(0),) * len(row),
    ) * (n_target - 3)

    valid: bool = source.assumptions_hold(k)
    inst: _core.Instance = _core.Instance(
        values=rows,
        item_labels=labels,
        metadata={
            "gadget": {
                "name": "eqcard",
                "k": k,
                "T": T,
                "T_prime": T_prime,
                "valid_assumptions": valid,
            }
        },
    )

    return inst, _core.Quota.exact((k + 2,) * 3 + (0,) * (n_target - 3))


def eqcard_allocation(
    values: PartitionInput | Iterable[int], subset: Iterable[int], n_target: int = 3
) -> _core.Allocation:
    """
    Allocates the equal-cardinality gadget from one side of a partition.

    Agent 0 takes the items of `subset` and two worthless items, agent 1
    the other k items of the first group and two worthless items, and
    agent 2 every copy of b and the last worthless item.

    :param values: Partition input of even size.
    :param subset: k indices into the input forming one side.
    :param n_target: Number of agents in the gadget.
    :return: Complete allocation of the gadget.
    """

    source: PartitionInput = _as_partition_input(values)
    k: int = len(source.values) // 2
    chosen: frozenset[int] = frozenset(subset)
    if len(chosen) != k:
        raise _exceptions.InvalidParameterException(
            f"one side must hold exactly {k} indices, got {len(chosen)}"
        )

    owner: list[int] = [0 if j in chosen else 1 for j in range(2 * k)]
    owner += [2] * (k + 1)
    owner += [0, 0, 1, 1, 2]

    return _core.Allocation(tuple(owner))


################################################################################
# Source problem oracles                                                       #
################################################################################


def find_equal_sum_subset(values: Sequence[int]) -> tuple[int, ...] | None:
    """
    Searches subsets for one summing to half of the total.

    :param values: Multiset.
    :return: Indices of the first such subset by size then lexicographic order, or None.
    """

    total: int = sum(values)
    if total % 2:
        return None

    for size in range(len(values) + 1):
        for indices in itertools.combinations(range(len(values)), size):
            if 2 * sum(values[j] for j in indices) == total:
                return indices

    return None


def find_equal_cardinality_subset(values: Sequence[int]) -> tuple[int, ...] | None:
    """
    Searches half-size subsets for one summing to half of the total.

    :param values: Multiset of even size.
    :return: Indices of the first such subset in lexicographic order, or None.
    """

    total: int = sum(values)
    if total % 2 or len(values) % 2:
        return None

    for indices in itertools.combinations(range(len(values)), len(values) // 2):
        if 2 * sum(values[j] for j in indices) == total:
            return indices

    return None


################################################################################
# Random instances                                                             #
################################################################################


@dataclass(frozen=True)
class BinaryModel:
    """Each value is 1 with probability p, otherwise 0."""

    p: Fraction

    def __post_init__(self):
        object.__setattr__(self, "p", _util.as_rational(self.p))
        if not 0 <= self.p <= 1:
            raise _exceptions.InvalidParameterException(f"probability must lie in [0, 1], got {self.p}")

    def draw(self, rng: random.Random) -> Fraction:
        """Draws one value."""
        return Fraction(int(rng.randrange(self.p.denominator) < self.p.numerator))

    def __str__(self) -> str:
        return f"binary({_util.format_rational(self.p)})"


@dataclass(frozen=True)
class UniformIntModel:
    """Values drawn uniformly from the integers lo..hi."""

    lo: int
    hi: int

    def __post_init__(self):
        if self.lo < 0 or self.lo > self.hi:
            raise _exceptions.InvalidParameterException(
                f"uniform_int needs 0 <= lo <= hi, got ({self.lo}, {self.hi})"
            )

    def draw(self, rng: random.Random) -> Fraction:
        """Draws one value."""
        return Fraction(rng.randint(self.lo, self.hi))

    def __str__(self) -> str:
        return f"uniform_int({self.lo},{self.hi})"


@dataclass(frozen=True)
class UniformRationalModel:
    """Values p/q in [0, 1] with q drawn from 1..den_max and p from 0..q."""

    den_max: int

    def __post_init__(self):
        if self.den_max < 1:
            raise _exceptions.InvalidParameterException(
                f"uniform_rational needs a positive denominator bound, got {self.den_max}"
            )

    def draw(self, rng: random.Random) -> Fraction:
        """Draws one value."""
        denominator: int = rng.randint(1, self.den_max)
        return Fraction(rng.randint(0, denominator), denominator)

    def __str__(self) -> str:
        return f"uniform_rational({self.den_max})"


ValueModel = BinaryModel | UniformIntModel | UniformRationalModel

MODEL_PATTERN: re.Pattern[str] = re.compile(r"\s*(?P<name>\w+)\s*\((?P<args>[^()]*)\)\s*$")


def parse_value_model(text: str) -> ValueModel:
    """
    Parses a value model written as binary(p), uniform_int(lo,hi) or uniform_rational(q).

    :param text: Model description.
    :return: Value model.
    """

    match = MODEL_PATTERN.match(text)
    if match is None:
        raise _exceptions.InvalidParameterException(f"malformed value model: {text!r}")

    name: str = match.group("name")
    args: list[str] = [arg.strip() for arg in match.group("args").split(",") if arg.strip()]

    try:
        if name == "binary" and len(args) == 1:
            return BinaryModel(_util.as_rational(args[0]))
        if name == "uniform_int" and len(args) == 2:
            return UniformIntModel(int(args[0]), int(args[1]))
        if name == "uniform_rational" and len(args) == 1:
            return UniformRationalModel(int(args[0]))
    except ValueError as exc:
        raise _exceptions.InvalidParameterException(f"malformed value model: {text!r}") from exc

    raise _exceptions.InvalidParameterException(f"unknown value model: {text!r}")


def gen_random(n: int, m: int, model: ValueModel | str, seed: int) -> _core.Instance:
    """
    Draws a random instance.

    Values are drawn row by row from a generator seeded with `seed` only.

    :param n: Number of agents, at least 1.
    :param m: Number of items, at least 0.
    :param model: Value model or its description.
    :param seed: Seed.
    :return: Instance.
    """

    if n < 1 or m < 0:
        raise _exceptions.InvalidParameterException(f"need n >= 1 and m >= 0, got n={n}, m={m}")

    if isinstance(model, str):
        model = parse_value_model(model)

    rng: random.Random = random.Random(seed)
    return _core.Instance(
        values=tuple(tuple(model.draw(rng) for _ in range(m)) for _ in range(n)),
        metadata={"random": {"model": str(model), "seed": seed}},
    )


__all__: tuple[str, ...] = (
    "PartitionInput",
    "gen_from_partition",
    "partition_allocation",
    "gen_ef_embedding",
    "embed_allocation",
    "is_envy_free",
    "gen_from_eqcard_partition",
    "eqcard_allocation",
    "find_equal_sum_subset",
    "find_equal_cardinality_subset",
    "BinaryModel",
    "UniformIntModel",
    "UniformRationalModel",
    "ValueModel",
    "parse_value_model",
    "gen_random",
)
