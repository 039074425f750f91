"""
Average envy-freeness for indivisible goods
"""

from .core import (
    Allocation,
    Instance,
    Quota,
    average_value,
    bundle_value,
    satisfies_quota,
    validate_allocation,
)
from .dispatch import dispatch
from .fairness import (
    EnvyWitness,
    is_aef,
    is_aef1,
    is_alpha_aef1,
    is_eps_aef1,
    max_alpha,
    normalize,
)

__all__: tuple[str, ...] = (
    "Instance",
    "Allocation",
    "Quota",
    "bundle_value",
    "average_value",
    "validate_allocation",
    "satisfies_quota",
    "EnvyWitness",
    "is_aef",
    "is_aef1",
    "is_eps_aef1",
    "is_alpha_aef1",
    "max_alpha",
    "normalize",
    "dispatch",
)
