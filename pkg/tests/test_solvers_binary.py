import itertools
import random

import pytest

import aefair.core
import aefair.exceptions
import aefair.fairness
import aefair.reductions
from aefair.solvers import (
    BinaryDpSolver,
    DPState,
    brute_force_aef1,
    check_state_aef1_binary,
    dp_binary_quota,
    explore,
    iter_allocations,
)


def state_of(inst, allocation):
    bundles = allocation.bundles(inst.n)
    return DPState(
        W=allocation.sizes(inst.n),
        H=tuple(
            tuple(int(aefair.core.bundle_value(inst, i, bundle)) for bundle in bundles)
            for i in range(inst.n)
        ),
        k=inst.m,
    )


def binary_instances(n, m):
    for bits in itertools.product((0, 1), repeat=n * m):
        yield aefair.core.Instance.from_rows([bits[i * m : (i + 1) * m] for i in range(n)])


def assert_valid_answer(inst, quota, allocation):
    assert aefair.fairness.is_aef1(inst, allocation)[0]
    assert aefair.core.satisfies_quota(allocation, quota)[0]


def test_check_state_examples():
    quota = aefair.core.Quota.unbounded(2, 4)

    assert check_state_aef1_binary(DPState(W=(2, 2), H=((2, 2), (2, 2)), k=4), quota, 4)
    assert check_state_aef1_binary(
        DPState(W=(1, 1), H=((1, 0), (1, 0)), k=2), aefair.core.Quota.unbounded(2, 2), 2
    )
    assert not check_state_aef1_binary(
        DPState(W=(2, 0), H=((2, 0), (2, 0)), k=2), aefair.core.Quota.unbounded(2, 2), 2
    )


def test_check_state_applies_quota():
    state = DPState(W=(2, 2), H=((2, 2), (2, 2)), k=4)
    assert not check_state_aef1_binary(state, aefair.core.Quota.exact((3, 1)), 4)


def test_check_state_requires_final_state():
    state = DPState(W=(1, 1), H=((1, 0), (1, 0)), k=2)

    with pytest.raises(aefair.exceptions.InvalidParameterException):
        check_state_aef1_binary(state, aefair.core.Quota.unbounded(2, 3), 3)


@pytest.mark.parametrize("m", range(0, 6))
def test_check_state_matches_checker(m):
    quota = aefair.core.Quota.unbounded(2, m)
    allocations = list(iter_allocations(2, m))

    for inst in binary_instances(2, m):
        for allocation in allocations:
            assert check_state_aef1_binary(state_of(inst, allocation), quota, m) == (
                aefair.fairness.is_aef1(inst, allocation)[0]
            ), (inst.values, allocation.owner)


@pytest.mark.parametrize(
    "quota",
    [
        aefair.core.Quota.exact((2, 2)),
        aefair.core.Quota(lower=(0, 0), upper=(4, 4)),
        aefair.core.Quota(lower=(3, 0), upper=(4, 1)),
    ],
)
def test_matches_brute_force_on_two_agents(quota):
    for inst in binary_instances(2, 4):
        expected = brute_force_aef1(inst, quota)
        allocation = dp_binary_quota(inst, quota)

        assert (allocation is None) == (expected is None), inst.values
        if allocation is not None:
            assert_valid_answer(inst, quota, allocation)


def test_matches_brute_force_on_three_agents():
    rng = random.Random(3)
    quotas = [
        aefair.core.Quota.exact((2, 2, 2)),
        aefair.core.Quota(lower=(0, 0, 0), upper=(6, 6, 6)),
        aefair.core.Quota(lower=(3, 0, 1), upper=(4, 2, 3)),
        aefair.core.Quota(lower=(0, 0, 0), upper=(1, 1, 4)),
    ]

    for seed in range(200):
        inst = aefair.reductions.gen_random(3, 6, "binary(1/2)", seed)
        quota = rng.choice(quotas)

        expected = brute_force_aef1(inst, quota)
        allocation = dp_binary_quota(inst, quota)

        assert (allocation is None) == (expected is None), (inst.values, quota)
        if allocation is not None:
            assert_valid_answer(inst, quota, allocation)


def test_pruning_does_not_change_verdicts():
    quota = aefair.core.Quota(lower=(1, 2), upper=(2, 3))
    for inst in binary_instances(2, 4):
        pruned = dp_binary_quota(inst, quota, prune=True)
        unpruned = dp_binary_quota(inst, quota, prune=False)

        assert (pruned is None) == (unpruned is None)


def test_scales_past_brute_force():
    quota = aefair.core.Quota.exact((12, 12))

    for seed in range(3):
        inst = aefair.reductions.gen_random(2, 24, "binary(1/2)", seed)

        with pytest.raises(aefair.exceptions.ResourceCapException):
            brute_force_aef1(inst, quota)

        allocation = dp_binary_quota(inst, quota)
        if allocation is not None:
            assert_valid_answer(inst, quota, allocation)


@pytest.mark.parametrize("ones, exists", [(12, True), (13, False)])
def test_identical_valuations_at_scale(ones, exists):
    # 13 valued items cannot be split into two 12-item bundles without
    # the poorer side envying after any single removal.
    row = [1] * ones + [0] * (24 - ones)
    inst = aefair.core.Instance.from_rows([row, row])
    quota = aefair.core.Quota.exact((12, 12))

    allocation = dp_binary_quota(inst, quota)

    assert (allocation is not None) == exists
    if exists:
        assert_valid_answer(inst, quota, allocation)


def test_reached_states():
    inst = aefair.reductions.gen_random(3, 5, "binary(1/2)", 11)
    columns = [tuple(int(row[g]) for row in inst.values) for g in range(inst.m)]
    graph = explore(DPState.initial(3), columns)

    for k, layer in enumerate(graph.layers):
        assert len(layer) <= 3**k
        assert all(sum(W) == k for W, _ in layer)

    for state in graph.final_states():
        allocation = aefair.core.Allocation(tuple(graph.reconstruct(state)))
        assert state_of(inst, allocation) == state


def test_all_zero_values_balance():
    inst = aefair.core.Instance.from_rows([[0] * 6, [0] * 6, [0] * 6])
    quota = aefair.core.Quota.exact((2, 2, 2))

    allocation = dp_binary_quota(inst, quota)
    assert allocation is not None
    assert_valid_answer(inst, quota, allocation)


def test_rejects_non_binary_instances():
    inst = aefair.core.Instance.from_rows([[1, 2], [0, 1]])

    with pytest.raises(aefair.exceptions.NonBinaryInstanceException):
        dp_binary_quota(inst, aefair.core.Quota.exact((1, 1)))


def test_state_cap():
    inst = aefair.reductions.gen_random(2, 6, "binary(1/2)", 0)

    with pytest.raises(aefair.exceptions.ResourceCapException):
        dp_binary_quota(inst, aefair.core.Quota.unbounded(2, 6), max_states=5)


def test_solver_requires_quota():
    inst = aefair.core.Instance.from_rows([[1, 0], [0, 1]])
    solver = BinaryDpSolver()

    with pytest.raises(aefair.exceptions.InvalidParameterException):
        solver.run(inst)

    allocation = solver.run(inst, aefair.core.Quota.exact((1, 1)))
    assert allocation.owner == (0, 1)
