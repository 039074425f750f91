"""
Allocation algorithms
"""

from .approximate import (
    AcceptedState,
    ApproxDpSolver,
    RemovingMatrix,
    RoundedProfile,
    accepted_states,
    approximation_ratio,
    dp_approx_quota,
    enumerate_removing_matrices,
    round_instance_uniform,
    round_valuations,
    round_value,
)
from .base import Solver
from .binary import BinaryDpSolver, check_state_aef1_binary, dp_binary_quota
from .brute_force import (
    BruteForceAef1Solver,
    BruteForceAefSolver,
    brute_force_aef,
    brute_force_aef1,
    iter_allocations,
)
from .picking import PickingSolver, solve_aef1_picking
from .states import DPState, StateGraph, explore

__all__: tuple[str, ...] = (
    "Solver",
    "PickingSolver",
    "BruteForceAefSolver",
    "BruteForceAef1Solver",
    "BinaryDpSolver",
    "ApproxDpSolver",
    "solve_aef1_picking",
    "iter_allocations",
    "brute_force_aef",
    "brute_force_aef1",
    "DPState",
    "StateGraph",
    "explore",
    "check_state_aef1_binary",
    "dp_binary_quota",
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
)
