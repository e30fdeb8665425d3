"""Tabular output with a reproducibility header.

CSV output starts with a block of `# key: value` lines (value is JSON) carrying the effective
config, seed, generator and package version, followed by the table with floats written to a
fixed number of significant digits. With the default 17 digits every double is written exactly,
so `read_csv_table` recovers the table that was written. JSON output is one document with a
`metadata` object and a `rows` array.
"""

from __future__ import annotations

import io
import json
import math
from enum import Enum
from typing import Any

import numpy as np
import pandas as pd
from pydantic import BaseModel, Field

from elemental.common import FLOAT_DIGITS, ElementalEnum, format_float, parse_str_to_enum
from elemental.config import Config
from elemental.distributions import GENERATOR_NAME, RngSpec
from elemental.errors import InputDataError
from elemental.version import get_version

METADATA_PREFIX = "# "


class OutputFormat(ElementalEnum):
    """Output formats of the command line tools."""

    CSV = "csv"
    JSON = "json"


class ResultDocument(BaseModel):
    """JSON form of a result table."""

    metadata: dict[str, Any] = Field(default_factory=dict, description="Run metadata.")
    rows: list[dict[str, Any]] = Field(default_factory=list, description="Table rows.")


def build_metadata(
    config: Config,
    seed: RngSpec | None = None,
    **fields: Any,
) -> dict[str, Any]:
    """Metadata echoed in front of every output: version, config, and seed when random."""
    metadata: dict[str, Any] = {"version": get_version()}
    if seed is not None:
        metadata.update(
            {
                "generator": GENERATOR_NAME,
                "seed": seed.seed,
                "stream_id": seed.stream_id,
            }
        )
    metadata.update(fields)
    metadata["config"] = config.metadata()
    return metadata


def _plain(value: Any) -> Any:  # noqa: ANN401
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, BaseModel):
        return value.model_dump(mode="json")
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, list | tuple):
        return [_plain(v) for v in value]
    return value


def metadata_header(metadata: dict[str, Any]) -> str:
    """Render metadata as `# key: json` lines."""
    return "".join(
        f"{METADATA_PREFIX}{key}: {json.dumps(_plain(value), sort_keys=True)}\n"
        for key, value in metadata.items()
    )


def to_csv(table: pd.DataFrame, metadata: dict[str, Any], digits: int = FLOAT_DIGITS) -> str:
    """Render a table as CSV text preceded by its metadata block."""
    header = metadata_header(metadata)
    body = table.to_csv(index=False, float_format=f"%.{digits}g", lineterminator="\n")
    return header + body


def read_csv_table(text: str) -> tuple[pd.DataFrame, dict[str, Any]]:
    """Parse CSV text written by `to_csv` into (table, metadata).

    Raises:
        InputDataError: If a metadata line is malformed.

    """
    metadata: dict[str, Any] = {}
    lines = text.splitlines(keepends=True)
    body_start = len(lines)
    for index, line in enumerate(lines):
        if not line.startswith(METADATA_PREFIX.strip()):
            body_start = index
            break
        key, sep, value = line[len(METADATA_PREFIX) :].partition(": ")
        if not sep:
            raise InputDataError(f"malformed metadata line: {line.strip()}")
        try:
            metadata[key] = json.loads(value)
        except json.JSONDecodeError as e:
            raise InputDataError(f"malformed metadata value for {key}: {e}") from e
    body = "".join(lines[body_start:])
    if not body.strip():
        return pd.DataFrame(), metadata
    return pd.read_csv(io.StringIO(body), float_precision="round_trip"), metadata


def _rounded(value: Any, digits: int) -> Any:  # noqa: ANN401
    value = _plain(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            return None
        return float(format_float(value, digits)) if digits < FLOAT_DIGITS else value
    return value


def to_json(table: pd.DataFrame, metadata: dict[str, Any], digits: int = FLOAT_DIGITS) -> str:
    """Render a table as a JSON document; non-finite floats become null."""
    rows = [
        {str(k): _rounded(v, digits) for k, v in record.items()}
        for record in table.to_dict(orient="records")
    ]
    document = ResultDocument(metadata=_plain(metadata), rows=rows)
    return document.model_dump_json(indent=4)


def render(
    table: pd.DataFrame,
    metadata: dict[str, Any],
    output_format: OutputFormat | str = OutputFormat.CSV,
    digits: int = FLOAT_DIGITS,
) -> str:
    """Render a table in the requested format."""
    if parse_str_to_enum(output_format, OutputFormat) is OutputFormat.JSON:
        return to_json(table, metadata, digits)
    return to_csv(table, metadata, digits)


def read_values(text: str) -> list[float]:
    """Parse one value per line; blank lines and `#` comments are skipped.

    Raises:
        InputDataError: If a line is not a finite number.

    """
    values = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            value = float(line)
        except ValueError as e:
            raise InputDataError(f"line {number}: {line!r} is not a number") from e
        if not math.isfinite(value):
            raise InputDataError(f"line {number}: {line!r} is not finite")
        values.append(value)
    return values


def read_custom_weights(text: str) -> dict[tuple[int, int], float]:
    """Parse custom combination weights, one `i,j,weight` triple per line.

    Raises:
        InputDataError: If a line is malformed.

    """
    weights: dict[tuple[int, int], float] = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = [part.strip() for part in line.replace(";", ",").split(",")]
        try:
            i, j, weight = int(parts[0]), int(parts[1]), float(parts[2])
        except (IndexError, ValueError) as e:
            raise InputDataError(f"line {number}: expected i,j,weight, got {line!r}") from e
        if len(parts) != 3:  # noqa: PLR2004
            raise InputDataError(f"line {number}: expected i,j,weight, got {line!r}")
        weights[(i, j)] = weight
    return weights
