"""
Decorators

These decorators are meant for internal use only.
"""

import inspect
from functools import wraps
from typing import TYPE_CHECKING, Any, Callable, ParamSpec, TypeVar

from . import exceptions as _exceptions
from . import util as _util
from .constants import DEFAULT, UNASSIGNED

if TYPE_CHECKING:
    from . import core as _core

P = ParamSpec("P")
R = TypeVar("R")


def rational_argument(*rational_args: str) -> Callable[[Callable[P, R]], Callable[P, R]]:
    """
    Provides a decorator that converts arguments to exact rationals.

    Only parameters specified in `rational_args` are normalized;
    `None` and `DEFAULT` are passed through untouched.

    :param rational_args: Argument names to convert.
    :return: Decorator that converts arguments to fractions.
    """

    def decorator(func: Callable[P, R]) -> Callable[P, R]:
        """
        Provides a wrapper to convert integers and "p/q" strings to fractions.

        :param func: Function to wrap.
        :return: Wrapper function.
        """

        sig: inspect.Signature = inspect.signature(func)

        @wraps(func)
        def wrapper(*args: P.args, **kwargs: P.kwargs) -> R:
            """
            Converts named arguments to fractions.

            :param args: Arguments to pass to `func`.
            :param kwargs: Keyword arguments to pass to `func`.
            :return: Result of `func`, called with exact rationals.
            """

            bound: inspect.BoundArguments = sig.bind(*args, **kwargs)
            bound.apply_defaults()

            for argument_name in rational_args:
                value: Any = bound.arguments[argument_name]
                if value is not None and value is not DEFAULT:
                    bound.arguments[argument_name] = _util.as_rational(value)

            return func(*bound.args, **bound.kwargs)

        return wrapper

    return decorator


def complete_allocation(
    instance_arg: str = "inst", allocation_arg: str = "allocation"
) -> Callable[[Callable[P, R]], Callable[P, R]]:
    """
    Provides a decorator that rejects partial or mismatched allocations.

    :param instance_arg: Name of the instance parameter.
    :param allocation_arg: Name of the allocation parameter.
    :return: Decorator that validates the allocation before the call.
    """

    def decorator(func: Callable[P, R]) -> Callable[P, R]:
        """
        Provides a wrapper validating the allocation against the instance.

        :param func: Function to wrap.
        :return: Wrapper function.
        """

        sig: inspect.Signature = inspect.signature(func)

        @wraps(func)
        def wrapper(*args: P.args, **kwargs: P.kwargs) -> R:
            """
            Validates the allocation argument.

            :param args: Arguments to pass to `func`.
            :param kwargs: Keyword arguments to pass to `func`.
            :return: Result of `func`.
            """

            bound: inspect.BoundArguments = sig.bind(*args, **kwargs)
            inst: "_core.Instance" = bound.arguments[instance_arg]
            allocation: "_core.Allocation" = bound.arguments[allocation_arg]

            if len(allocation.owner) != inst.m:
                raise _exceptions.IncompleteAllocationException(
                    f"length mismatch: {len(allocation.owner)} owners for {inst.m} items"
                )

            for item, owner in enumerate(allocation.owner):
                if owner == UNASSIGNED:
                    raise _exceptions.IncompleteAllocationException(
                        f"item {item} is unassigned"
                    )
                if isinstance(owner, bool) or not isinstance(owner, int):
                    raise _exceptions.IncompleteAllocationException(
                        f"integer owner expected at owner[{item}], got {owner!r}"
                    )
                if not 0 <= owner < inst.n:
                    raise _exceptions.IncompleteAllocationException(
                        f"owner index out of range at owner[{item}]"
                    )

            return func(*args, **kwargs)

        return wrapper

    return decorator


def default(**normalization_kwargs: str) -> Callable[[Callable[P, R]], Callable[P, R]]:
    """
    Provides a decorator that applies default values to a function call.

    :param normalization_kwargs: Mapping of function parameter names to attribute names.
    :return: Decorator that applies default values to a function call.
    """

    def decorator(func: Callable[P, R]) -> Callable[P, R]:
        """
        Provides a wrapper that applies default values to a function call.

        :param func: Function to wrap.
        :return: Wrapper function.
        """

        sig: inspect.Signature = inspect.signature(func)

        @wraps(func)
        def wrapper(self: object, *args: P.args, **kwargs: P.kwargs) -> R:
            """
            Applies default values to a function call.

            For parameters enumerated in `normalization_kwargs` where the
            corresponding argument value is `DEFAULT`, replaces the argument
            with a value extracted from `self` named by the value corresponding
            to the parameter name in `normalization_kwargs`.

            :param self: Object to extract attributes from.
            :param args: Arguments to pass to `func`.
            :param kwargs: Keyword arguments to pass to `func`.
            :return: Result of `func`.
            """

            bound: inspect.BoundArguments = sig.bind(self, *args, **kwargs)
            bound.apply_defaults()

            for argument_name, default_name in normalization_kwargs.items():
                if bound.arguments[argument_name] is DEFAULT:
                    bound.arguments[argument_name] = getattr(self, default_name)

            return func(*bound.args, **bound.kwargs)

        return wrapper

    return decorator


__all__: tuple[str, ...] = ("rational_argument", "complete_allocation", "default")
