import itertools

import pytest

import aefair.core
import aefair.exceptions
import aefair.fairness
import aefair.reductions
from aefair.solvers import (
    BruteForceAef1Solver,
    BruteForceAefSolver,
    brute_force_aef,
    brute_force_aef1,
    iter_allocations,
)


def test_iter_allocations_is_lexicographic():
    owners = [allocation.owner for allocation in iter_allocations(2, 3)]
    assert owners == list(itertools.product(range(2), repeat=3))


@pytest.mark.parametrize(
    "quota",
    [
        aefair.core.Quota.exact((2, 1, 1)),
        aefair.core.Quota(lower=(1, 0, 0), upper=(2, 4, 1)),
        aefair.core.Quota(lower=(0, 0, 0), upper=(1, 1, 1)),
    ],
)
def test_iter_allocations_respects_quota(quota):
    expected = [
        owner
        for owner in itertools.product(range(3), repeat=4)
        if quota.admits([owner.count(agent) for agent in range(3)]) is None
    ]

    assert [allocation.owner for allocation in iter_allocations(3, 4, quota)] == expected


def test_single_agent_gets_everything():
    inst = aefair.core.Instance.from_rows([[1, 2, 3]])
    assert brute_force_aef(inst).owner == (0, 0, 0)


def test_first_aef_allocation():
    inst = aefair.core.Instance.from_rows([[1, 1], [1, 1]])

    assert brute_force_aef(inst).owner == (0, 1)
    assert brute_force_aef1(inst).owner == (0, 1)


def test_exact_quota_without_aef1_allocation():
    inst = aefair.core.Instance.from_rows([[1, 1], [1, 1]])
    assert brute_force_aef1(inst, aefair.core.Quota.exact((2, 0))) is None


def test_infeasible_quota():
    inst = aefair.core.Instance.from_rows([[1, 1], [1, 1]])
    assert brute_force_aef1(inst, aefair.core.Quota.exact((2, 2))) is None


def test_quota_shape_mismatch():
    inst = aefair.core.Instance.from_rows([[1, 1], [1, 1]])

    with pytest.raises(aefair.exceptions.InvalidParameterException):
        brute_force_aef(inst, aefair.core.Quota.exact((2,)))


def test_allocation_cap():
    inst = aefair.reductions.gen_random(2, 24, "binary(1/2)", 0)

    with pytest.raises(aefair.exceptions.ResourceCapException):
        brute_force_aef1(inst)

    with pytest.raises(aefair.exceptions.ResourceCapException):
        brute_force_aef(aefair.reductions.gen_random(2, 4, "binary(1/2)", 0), max_allocations=15)


def test_aef1_always_exists_without_quota():
    for seed in range(30):
        inst = aefair.reductions.gen_random(3, 5, "uniform_rational(6)", seed)
        allocation = brute_force_aef1(inst)

        assert allocation is not None
        assert aefair.fairness.is_aef1(inst, allocation)[0]


def test_returned_allocations_pass_their_checks():
    quota = aefair.core.Quota(lower=(1, 1), upper=(3, 3))
    for seed in range(30):
        inst = aefair.reductions.gen_random(2, 4, "uniform_int(0,5)", seed)

        allocation = brute_force_aef(inst, quota)
        if allocation is not None:
            assert aefair.fairness.is_aef(inst, allocation)[0]
            assert aefair.core.satisfies_quota(allocation, quota)[0]


def test_solver_classes():
    inst = aefair.core.Instance.from_rows([[1, 1], [1, 1]])

    assert BruteForceAefSolver().run(inst).owner == (0, 1)
    assert BruteForceAef1Solver().run(inst, aefair.core.Quota.exact((2, 0))) is None

    with pytest.raises(aefair.exceptions.ResourceCapException):
        BruteForceAef1Solver(max_allocations=3).run(inst)

    assert BruteForceAef1Solver(max_allocations=3).solve(inst, max_allocations=4).owner == (0, 1)
