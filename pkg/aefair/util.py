"""
General utilities
"""

import functools
import importlib
import re
from fractions import Fraction
from typing import Any

from . import exceptions as _exceptions

NAME_PATTERN: re.Pattern[str] = re.compile(
    r"(?P<module>[\w.]+)\s*(:\s*(?P<attr>[\w.]+)\s*)?((?P<extras>\[.*])\s*)?$"
)


def load_object(name: str) -> Any:
    """
    Loads an object given an entry point specification.

    Entry point specifications consist of a module path,
    attribute, and an optional extra. For example:
    package.module:ClassName.

    :param name: Entry point specification.
    :return: Requested object.
    """

    match = NAME_PATTERN.match(name)
    if match is None:
        raise _exceptions.DispatchException(f"Malformed object reference: {name}")

    module = importlib.import_module(match.group("module"))
    attrs = filter(None, (match.group("attr") or "").split("."))
    return functools.reduce(getattr, attrs, module)


RATIONAL_PATTERN: re.Pattern[str] = re.compile(
    r"\s*(?P<numerator>[+-]?\d+)\s*(?:/\s*(?P<denominator>[+-]?\d+)\s*)?$"
)


def _to_fraction(value: Any) -> Fraction:
    """
    Converts an exact literal into a fraction.

    :param value: Integer, fraction, or "p/q" string.
    :return: Equivalent fraction.
    :raises ValueError: Describing the problem without a location.
    """

    # bool is an int subclass
    if isinstance(value, bool):
        raise ValueError("boolean is not a rational")

    if isinstance(value, (int, Fraction)):
        return Fraction(value)

    if isinstance(value, str):
        match = RATIONAL_PATTERN.match(value)
        if match is None:
            raise ValueError(f"malformed rational {value!r}")

        numerator = int(match.group("numerator"))
        denominator = int(match.group("denominator") or 1)
        if denominator == 0:
            raise ValueError("zero denominator")
        if denominator < 0:
            raise ValueError("negative denominator")

        return Fraction(numerator, denominator)

    raise ValueError(f"inexact or unsupported value {value!r}")


def as_rational(value: Any) -> Fraction:
    """
    Normalizes an API argument into an exact rational.

    :param value: Integer, fraction, or "p/q" string.
    :return: Equivalent fraction.
    """

    try:
        return _to_fraction(value)
    except ValueError as exc:
        raise _exceptions.InvalidParameterException(str(exc)) from exc


def parse_rational(value: Any, where: str) -> Fraction:
    """
    Parses a rational read from a document.

    :param value: Raw document value.
    :param where: Field path used in diagnostics, such as values[0][2].
    :return: Parsed fraction.
    """

    try:
        return _to_fraction(value)
    except ValueError as exc:
        raise _exceptions.DocumentException(f"{exc} at {where}") from exc


def format_rational(value: Fraction | int) -> int | str:
    """
    Produces the canonical document form of a rational.

    Integers are written bare, everything else as "p/q" in lowest terms.

    :param value: Value to format.
    :return: Integer or string.
    """

    value = Fraction(value)
    if value.denominator == 1:
        return value.numerator

    return f"{value.numerator}/{value.denominator}"


__all__: tuple[str, ...] = (
    "load_object",
    "as_rational",
    "parse_rational",
    "format_rational",
)
