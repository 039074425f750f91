"""
Exceptions raised within the package
"""

import abc


class AefairBaseException(Exception, abc.ABC):
    """Exception raised by aefair"""


class InvalidInstanceException(AefairBaseException, ValueError):
    """Valuation profile is malformed"""


class AgentIndexException(AefairBaseException, IndexError):
    """Agent or item index is out of range"""


class IncompleteAllocationException(AefairBaseException):
    """Allocation is partial or does not match the instance"""


class InvalidParameterException(AefairBaseException, ValueError):
    """Parameter lies outside of its permitted range"""


class NonBinaryInstanceException(AefairBaseException):
    """Instance has a value outside of {0, 1}"""


class ResourceCapException(AefairBaseException):
    """Search exceeded a configured resource cap"""


class DispatchException(AefairBaseException):
    """Error while dispatching"""


class DocumentException(AefairBaseException, ValueError):
    """File document is malformed"""


__all__: tuple[str, ...] = (
    "AefairBaseException",
    "InvalidInstanceException",
    "AgentIndexException",
    "IncompleteAllocationException",
    "InvalidParameterException",
    "NonBinaryInstanceException",
    "ResourceCapException",
    "DispatchException",
    "DocumentException",
)
