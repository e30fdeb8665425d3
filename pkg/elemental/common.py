"""Types and utilities useful across the package.

This module defines the string enum base used by every public enumeration, the enum parser shared
by the config and CLI layers, and the float formatting used by every output writer.
"""

from __future__ import annotations

from enum import Enum
from typing import TypeVar

from elemental.errors import InvalidConfigError

FLOAT_DIGITS = 17


class ElementalEnum(str, Enum):
    """Base enum class for the package's enums.

    Members are strings, so they serialise directly into CSV and JSON.
    """

    @classmethod
    def values(cls) -> list[str]:
        """Return the string values, e.g. for CLI choices."""
        return [x.value for x in cls]


E = TypeVar("E", bound=Enum)


def parse_str_to_enum(value: str | E, enum_type: type[E]) -> E:
    """Parse a string to an enum or return the enum as is.

    Strings match either a member name (case-insensitive, `-` read as `_`) or a member value.

    Args:
        value (str | E): The value to parse.
        enum_type (type[E]): The enum type to parse the value into.

    Raises:
        InvalidConfigError: If the value cannot be parsed into the enum.

    Returns:
        E: The corresponding enum value.

    """
    if isinstance(value, enum_type):
        return value
    if isinstance(value, str):
        try:
            return enum_type[value.upper().replace("-", "_")]
        except KeyError:
            pass
        try:
            # goes through _missing_, so enums can declare aliases
            return enum_type(value)
        except ValueError:
            pass
        for member in enum_type:
            if str(member.value).lower() == value.lower():
                return member
        raise InvalidConfigError(
            value=value,
            issue=f"Invalid value for enum {enum_type.__name__}",
        )

    raise InvalidConfigError(
        value=str(value),
        issue=f"Value must be a string or {enum_type.__name__}",
    )


def format_float(value: float, digits: int = FLOAT_DIGITS) -> str:
    """Format a float with `digits` significant digits, locale independent.

    17 significant digits round-trip any IEEE double exactly.
    """
    return format(float(value), f".{digits}g")
