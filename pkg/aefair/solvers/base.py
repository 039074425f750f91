"""
Solver

Provides the `Solver` base class shared by every allocation algorithm
that can be looked up by name.
"""

import logging
from abc import abstractmethod
from fractions import Fraction

from .. import core as _core
from .. import exceptions as _exceptions
from ..constants import DEFAULT_MAX_ALLOCATIONS, DEFAULT_MAX_MATRICES, DEFAULT_MAX_STATES

logger: logging.Logger = logging.getLogger(__name__)


class Solver:
    """
    Allocation algorithm.

    Subclasses name the algorithm, declare their preconditions, and
    state which fairness notion their allocations are meant to meet.
    """

    name: str = "abstract"
    requires_quota: bool = False
    requires_binary: bool = False
    honors_quota: bool = True

    # One of "aef", "aef1" or "alpha-aef1".
    claim: str = "aef1"

    # pylint: disable=too-many-arguments
    def __init__(
        self,
        max_allocations: int = DEFAULT_MAX_ALLOCATIONS,
        max_states: int = DEFAULT_MAX_STATES,
        max_matrices: int = DEFAULT_MAX_MATRICES,
        prune: bool = True,
        **kwargs,
    ):
        """
        Initializes the solver.

        :param max_allocations: Cap on allocations enumerated by brute force.
        :param max_states: Cap on reached states in a dynamic program.
        :param max_matrices: Cap on removing matrices examined.
        :param prune: Whether searches discard quota-infeasible partial allocations.
        :param kwargs: Unused - provided to prevent errors.
        """

        # Callers driving several algorithms from one set of options
        # pass keywords that only some solvers understand.
        for kwarg_key in kwargs:
            logger.warning("Received unexpected keyword initialization argument: %s", kwarg_key)

        self.max_allocations: int = max_allocations
        self.max_states: int = max_states
        self.max_matrices: int = max_matrices
        self.prune: bool = prune

    def run(self, inst: _core.Instance, quota: _core.Quota | None = None) -> _core.Allocation | None:
        """
        Checks preconditions, then solves.

        :param inst: Instance.
        :param quota: Optional quota.
        :return: Allocation found, or None when none exists.
        """

        if self.requires_quota and quota is None:
            raise _exceptions.InvalidParameterException(f"{self.name} requires a quota")

        if quota is not None and quota.n != inst.n:
            raise _exceptions.InvalidParameterException(
                f"quota covers {quota.n} agents, instance has {inst.n}"
            )

        if self.requires_binary and not inst.is_binary:
            raise _exceptions.NonBinaryInstanceException(f"{self.name} requires a binary instance")

        logger.info("Running %s on %d agents and %d items", self.name, inst.n, inst.m)
        allocation: _core.Allocation | None = self.solve(inst, quota)
        logger.info("%s finished: %s", self.name, "found" if allocation is not None else "NO")

        return allocation

    @abstractmethod
    def solve(
        self, inst: _core.Instance, quota: _core.Quota | None = None
    ) -> _core.Allocation | None:
        """
        Searches for an allocation.

        :param inst: Instance.
        :param quota: Optional quota.
        :return: Allocation found, or None when none exists.
        """

        raise NotImplementedError

    def guarantee(self, inst: _core.Instance) -> Fraction | None:
        """
        Reports the approximation factor attached to returned allocations.

        :param inst: Instance solved.
        :return: Factor α, or None when the claim is exact.
        """

        return None


__all__: tuple[str, ...] = ("Solver",)
