"""Central definition of error classes.

This module defines custom exception classes used throughout the package. They give more context
than generic exceptions and carry the exit code the CLI reports for them.

Classes in this file include:

- `InvalidConfigError`: Raised when a configuration value is invalid.
- `DomainError`: Raised when an argument lies outside the domain of an operation.
- `NumericError`: Raised when a computation produces a non-finite intermediate.
- `InputDataError`: Raised when input data cannot be used (NaN values, malformed files).
- `DegenerateSpacingError`: Raised when an elemental meets a zero spacing.

"""

from __future__ import annotations

EXIT_USAGE = 1
EXIT_INPUT_DATA = 2
EXIT_NUMERIC = 3


class ElementalBaseError(Exception):
    """Base class for all our errors."""

    exit_code: int = EXIT_USAGE


class InvalidConfigError(ElementalBaseError):
    """Raised when a configuration value is invalid.

    Args:
        value (str): The name of the invalid configuration value.
        issue (str): A description of the issue with the configuration value.

    """

    def __init__(self, value: str, issue: str) -> None:
        """Set custom error message."""
        self.message = f"Config value {value.upper()} is not valid - {issue}"
        super().__init__(self.message)


class DomainError(ElementalBaseError):
    """Raised when an argument lies outside the domain of an operation.

    Args:
        name (str): The name of the offending argument.
        value (object): The value that was supplied.
        issue (str): What the operation requires instead.

    """

    def __init__(self, name: str, value: object, issue: str) -> None:
        """Set custom error message."""
        self.name = name
        self.value = value
        super().__init__(f"{name}={value!r} is out of range: {issue}")


class NumericError(ElementalBaseError):
    """Raised when a computation produces a non-finite intermediate.

    Args:
        method (str): The computation method that became unstable.
        detail (str): A description of what went wrong.

    """

    exit_code = EXIT_NUMERIC

    def __init__(self, method: str, detail: str) -> None:
        """Set custom error message."""
        self.method = method
        super().__init__(f"Numeric failure in {method} method: {detail}")


class InputDataError(ElementalBaseError):
    """Raised when input data cannot be used.

    Args:
        detail (str): A description of the problem with the data.

    """

    exit_code = EXIT_INPUT_DATA

    def __init__(self, detail: str) -> None:
        """Set custom error message."""
        super().__init__(detail)


class DegenerateSpacingError(InputDataError):
    """Raised when an elemental meets a zero spacing, so a log-spacing would be -inf.

    Args:
        i (int): The upper order statistic index of the elemental.
        j (int): The lower order statistic index of the elemental.
        detail (str): Which spacing vanished.

    """

    def __init__(self, i: int, j: int, detail: str) -> None:
        """Set custom error message."""
        self.i = i
        self.j = j
        super().__init__(f"Degenerate spacing in elemental (i={i}, j={j}): {detail}")
