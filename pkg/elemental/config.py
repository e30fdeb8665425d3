"""Configuration module for the package.

This module defines the `Config` class holding every tunable of the coefficient, estimation and
Monte Carlo layers together with logging options. Values come from, in increasing precedence:
field defaults, environment variables, an optional flat `KEY=value` config file, and explicit
overrides (usually CLI flags).
"""

from __future__ import annotations

import os
from pathlib import Path
from typing import Any, Self

from dotenv import dotenv_values
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from elemental.common import FLOAT_DIGITS, ElementalEnum, parse_str_to_enum
from elemental.errors import InvalidConfigError

ENV_PREFIX = "ELEMENTAL_"

# Above this N the recursion amplifies rounding error past useful accuracy.
DEFAULT_METHOD_THRESHOLD = 25
DEFAULT_GUMBEL_THRESHOLD = 1e-9
DEFAULT_CHUNK_SIZE = 10_000


class LogLevel(ElementalEnum):
    """Enum for available log levels.

    Attributes:
        DEBUG: Debug log level.
        INFO: Info log level.
        WARNING: Warning log level.
        ERROR: Error log level.
        CRITICAL: Critical log level.

    """

    DEBUG = "DEBUG"
    INFO = "INFO"
    WARNING = "WARNING"
    ERROR = "ERROR"
    CRITICAL = "CRITICAL"


def _env(name: str, default: str) -> str:
    return os.getenv(f"{ENV_PREFIX}{name}") or default


class Config(BaseModel):
    """General configuration for the package.

    Attributes:
        method_threshold: Largest N for which `auto` coefficients use the recursion; above it the
            asymptotic approximation is used.
        gumbel_threshold: |xi| below which distribution functions take the xi = 0 branch.
        chunk_size: Replicates per Monte Carlo work unit. Each unit owns one RNG stream, so this
            value, not the thread count, determines the random numbers drawn.
        threads: Maximum worker threads used by the harness.
        float_digits: Significant digits used when writing floats.
        skip_degenerate: Whether combinations renormalise over evaluable elementals instead of
            failing on a zero spacing.
        default_log_level: The log level of the default logger.
        default_log_sink: Where default logs go: "sys.stderr", "sys.stdout" or a file path.
        json_log_serialize: Whether to serialise logs to JSON.

    """

    model_config = ConfigDict(extra="forbid", validate_assignment=True)

    method_threshold: int = Field(
        default_factory=lambda: int(_env("METHOD_THRESHOLD", str(DEFAULT_METHOD_THRESHOLD))),
        description="Largest N computed by recursion when the coefficient method is auto.",
    )
    gumbel_threshold: float = Field(
        default=DEFAULT_GUMBEL_THRESHOLD,
        description="|xi| below which the Gumbel (xi = 0) branch is used.",
    )
    chunk_size: int = Field(
        default_factory=lambda: int(_env("CHUNK_SIZE", str(DEFAULT_CHUNK_SIZE))),
        description="Replicates per Monte Carlo work unit and RNG stream.",
    )
    threads: int = Field(
        default_factory=lambda: int(_env("THREADS", "1")),
        description="Maximum number of harness worker threads.",
    )
    float_digits: int = Field(
        default=FLOAT_DIGITS,
        description="Significant digits for floats in CSV and JSON output.",
    )
    skip_degenerate: bool = Field(
        default=False,
        description="Renormalise combination weights over evaluable elementals.",
    )

    # Logging Options
    default_log_level: LogLevel = Field(
        default_factory=lambda: parse_str_to_enum(_env("LOG_LEVEL", "WARNING"), LogLevel),
        description="The log level to log at. Only respected when the default logger is used.",
    )
    default_log_sink: str = Field(
        default_factory=lambda: _env("LOG_SINK", "sys.stderr"),
        description="Where to send logs. By default logs are sent to sys.stderr",
    )
    json_log_serialize: bool = Field(
        default=False,
        description="Whether to serialize logs to JSON",
    )

    @field_validator("default_log_level", mode="before")
    @classmethod
    def parse_default_log_level(cls, value: str | LogLevel) -> LogLevel:
        """Parse default_log_level to enum if string provided."""
        return parse_str_to_enum(value, LogLevel)

    @model_validator(mode="after")
    def check_config(self) -> Self:
        """Validate Config is consistent."""
        if self.method_threshold < 2:  # noqa: PLR2004
            raise InvalidConfigError("method_threshold", "must be at least 2")
        if self.chunk_size < 1:
            raise InvalidConfigError("chunk_size", "must be at least 1")
        if self.threads < 1:
            raise InvalidConfigError("threads", "must be at least 1")
        if not 1 <= self.float_digits <= FLOAT_DIGITS:
            raise InvalidConfigError("float_digits", f"must lie in [1, {FLOAT_DIGITS}]")
        if not 0 <= self.gumbel_threshold < 1:
            raise InvalidConfigError("gumbel_threshold", "must lie in [0, 1)")
        return self

    @classmethod
    def from_default(cls, **kwargs: Any) -> Config:
        """Create a Config instance with default values, allowing overrides."""
        return default_config(**kwargs)

    @classmethod
    def from_file(cls, path: str | Path, **kwargs: Any) -> Config:
        """Create a Config from a flat `KEY=value` file, allowing overrides.

        Keys are field names in any case, optionally prefixed with `ELEMENTAL_`. Blank values
        are ignored. Keyword overrides win over file values.

        Raises:
            InvalidConfigError: If the file is missing or names an unknown key.

        """
        file_path = Path(path)
        if not file_path.is_file():
            raise InvalidConfigError("config_file", f"{file_path} does not exist")
        file_values: dict[str, Any] = {}
        for key, value in dotenv_values(file_path).items():
            name = key.lower().removeprefix(ENV_PREFIX.lower())
            if name not in cls.model_fields:
                raise InvalidConfigError(name, f"unknown key in {file_path}")
            if value not in (None, ""):
                file_values[name] = value
        return default_config(**{**file_values, **kwargs})

    def metadata(self) -> dict[str, Any]:
        """Return the effective config as plain values for output metadata."""
        return self.model_dump(mode="json")


def default_config(**kwargs: Any) -> Config:
    """Return default config with values that can be overridden.

    Overrides that are None are ignored so that unset CLI flags fall through to the defaults.

    Raises:
        InvalidConfigError: If any value fails validation.

    """
    overrides = {k: v for k, v in kwargs.items() if v is not None}
    try:
        return Config(**overrides)
    except ValidationError as e:
        error = e.errors()[0]
        field = ".".join(str(part) for part in error.get("loc", ())) or "config"
        raise InvalidConfigError(field, error.get("msg", str(e))) from e
