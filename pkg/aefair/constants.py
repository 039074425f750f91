"""
Global value specification
"""


# noinspection PyPep8Naming
# pylint: disable=invalid-name,too-few-public-methods
class DEFAULT_TYPE:
    """
    Indicates that a value should be replaced with a default value.
    """


DEFAULT = DEFAULT_TYPE()


# noinspection PyPep8Naming
# pylint: disable=invalid-name,too-few-public-methods
class UNBOUNDED_TYPE:
    """
    Indicates that no finite ratio constrains an allocation.
    """

    def __repr__(self) -> str:
        return "UNBOUNDED"


UNBOUNDED = UNBOUNDED_TYPE()

# Owner entry of an item that has not been given to any agent.
UNASSIGNED: int = -1

DEFAULT_MAX_ALLOCATIONS: int = 10**7
DEFAULT_MAX_STATES: int = 10**6
DEFAULT_MAX_MATRICES: int = 10**6


__all__: tuple[str, ...] = (
    "DEFAULT_TYPE",
    "DEFAULT",
    "UNBOUNDED_TYPE",
    "UNBOUNDED",
    "UNASSIGNED",
    "DEFAULT_MAX_ALLOCATIONS",
    "DEFAULT_MAX_STATES",
    "DEFAULT_MAX_MATRICES",
)
