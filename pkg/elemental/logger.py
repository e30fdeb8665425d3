"""Logging functions for managing and configuring loggers.

The package logs through `loguru`. A `LoggerManager` owns the package-level logger, which callers
may replace with any object implementing `LoggerInterface`. Logs go to stderr by default so that
the CLI's data output on stdout is never interleaved with log lines.

Classes in this file include:

- `LoggerInterface`: The protocol any logger must satisfy.
- `Formatter`: Renders loguru records, colouring them by the subsystem that emitted them.
- `SafeLogger`: Wraps a logger so that a failure while logging never escapes into numerics.
- `LoggerManager`: Holds the active logger and configures it from a `Config`.

"""

from __future__ import annotations

import re
import sys
import traceback
from typing import TYPE_CHECKING, Any, Protocol

from loguru import logger as default_logger

if TYPE_CHECKING:
    from elemental.config import Config

SUBSYSTEM_COLOR_MAP = {
    "coefficient": "fg 39",
    "beta": "fg 39",
    "estimat": "fg 129",
    "elemental": "fg 129",
    "sample": "fg 87",
    "quantile": "fg 87",
    "mle": "fg 208",
    "fit": "fg 208",
    "sweep": "fg 34",
    "study": "fg 34",
    "harness": "fg 34",
}

LOG_METHODS = ("debug", "info", "warning", "error", "critical", "exception")


class LoggerInterface(Protocol):
    """General interface for loggers.

    Any logger passed to `LoggerManager.set_logger` must offer these methods.
    """

    def debug(self, msg: str, *args, **kwargs) -> None: ...  # noqa: ANN002, ANN003, D102
    def info(self, msg: str, *args, **kwargs) -> None: ...  # noqa: ANN002, ANN003, D102
    def warning(self, msg: str, *args, **kwargs) -> None: ...  # noqa: ANN002, ANN003, D102
    def error(self, msg: str, *args, **kwargs) -> None: ...  # noqa: ANN002, ANN003, D102
    def critical(self, msg: str, *args, **kwargs) -> None: ...  # noqa: ANN002, ANN003, D102
    def exception(self, msg: str, *args, **kwargs) -> None: ...  # noqa: ANN002, ANN003, D102


class Formatter:
    """Formats loguru records.

    Attributes:
        max_lines (int): Messages longer than this are truncated in the middle.

    """

    def __init__(self, max_lines: int = 30) -> None:
        """Initialize the formatter."""
        self.max_lines = max_lines

    def format(self, record: Any) -> str:  # noqa: ANN401
        """Format a log record into a loguru format string.

        Args:
            record (dict): The loguru record, with "message", "extra", "time", "level", "name",
                "function" and "line" keys.

        Returns:
            str: The formatted record.

        """
        msg = record["message"]
        if isinstance(msg, str):
            msg = self._sanitize_message_(msg)
        color = self._get_subsystem_color_(record)

        result = (
            f"<green>{record['time'].strftime('%Y-%m-%d %H:%M:%S.%f')[:-3]}</green> | "
            f"<level>{record['level'].name}</level> | "
            f"<{color}>{record['name']}:{record['function']}:{record['line']}</{color}> - "
            f"<level>{msg}</level>"
        )
        if record.get("exception") and hasattr(record["exception"], "value"):
            result += "\n" + "".join(traceback.format_exception(record["exception"].value))
        if record["extra"]:
            result += " | {extra}"
        return result + "\n"

    def _sanitize_message_(self, msg: str) -> str:
        """Escape braces and angle brackets so loguru does not interpret them."""
        msg = re.sub(r"(?<!\{)\{(?!\{)", "{{", msg)
        msg = re.sub(r"(?<!\})\}(?!\})", "}}", msg)
        msg = msg.replace("<", r"\<").replace(">", r"\>")
        return self._truncated_message_(msg)

    def _get_subsystem_color_(self, record: Any) -> str:  # noqa: ANN401
        """Pick a colour from the function name, then the module's own name. Default is white."""
        module = record["name"].rsplit(".", 1)[-1]
        for field in (record["function"], module):
            for key, color in SUBSYSTEM_COLOR_MAP.items():
                if key in field:
                    return color
        return "white"

    def _truncated_message_(self, msg: str) -> str:
        lines = msg.split("\n")
        if len(lines) <= self.max_lines:
            return msg
        keep_lines = self.max_lines - 1
        head_lines = keep_lines // 2
        tail_lines = keep_lines - head_lines
        return "\n".join(
            [
                *lines[:head_lines],
                f"... (truncated {len(lines) - keep_lines} lines) ...",
                *lines[-tail_lines:],
            ]
        )


class SafeLogger(LoggerInterface):
    """A logger that swallows exceptions raised by its child and reports them as errors."""

    def __init__(self, child_logger: LoggerInterface) -> None:
        """Initialize the SafeLogger."""
        super().__init__()
        self.child_logger = (
            child_logger.opt(depth=2)
            if isinstance(child_logger, type(default_logger))
            else child_logger
        )

    def _safe_call(self, level: str, msg: str, *args: Any, **kwargs: Any) -> None:
        try:
            getattr(self.child_logger, level)(msg, *args, **kwargs)
        except Exception as e:  # noqa: BLE001
            self.child_logger.error(f"Failed to log: {e}")  # noqa: G004, TRY400

    def debug(self, msg: str, *args: Any, **kwargs: Any) -> None:
        """Log at debug level."""
        self._safe_call("debug", msg, *args, **kwargs)

    def info(self, msg: str, *args: Any, **kwargs: Any) -> None:
        """Log at info level."""
        self._safe_call("info", msg, *args, **kwargs)

    def warning(self, msg: str, *args: Any, **kwargs: Any) -> None:
        """Log at warning level."""
        self._safe_call("warning", msg, *args, **kwargs)

    def error(self, msg: str, *args: Any, **kwargs: Any) -> None:
        """Log at error level."""
        self._safe_call("error", msg, *args, **kwargs)

    def critical(self, msg: str, *args: Any, **kwargs: Any) -> None:
        """Log at critical level."""
        self._safe_call("critical", msg, *args, **kwargs)

    def exception(self, msg: str, *args: Any, **kwargs: Any) -> None:
        """Log an exception with its traceback."""
        self._safe_call("exception", msg, *args, **kwargs)


class LoggerManager:
    """Manages the package-level logger.

    Args:
        custom_logger (LoggerInterface | None): A custom logger to use. If not provided the
            default `loguru` logger is used, writing WARNING and above to stderr.

    Attributes:
        custom_logger (bool): Whether `set_logger` has installed a custom logger.

    """

    def __init__(self, custom_logger: LoggerInterface | None = None) -> None:
        """Initialize the LoggerManager."""
        self.formatter = Formatter()
        default_logger.remove()
        default_logger.add(
            sys.stderr,
            level="WARNING",
            format=self.formatter.format,
            serialize=False,
            catch=True,
        )
        self._logger: LoggerInterface = (
            custom_logger or SafeLogger(default_logger)  # type: ignore  # noqa: PGH003
        )
        self.custom_logger = False

    @property
    def logger(self) -> LoggerInterface:
        """The active logger."""
        return self._logger

    def set_logger(self, custom_logger: LoggerInterface) -> None:
        """Install a custom logger."""
        self._logger = custom_logger
        self.custom_logger = True

    def configure_from_config(self, config: Config) -> None:
        """Configure level, sink and serialisation of the default logger from a Config.

        A custom logger is left untouched; a warning is logged instead.
        """
        if self.custom_logger:
            self._logger.warning("Custom logger is in use; skipping log level configuration.")
            return
        default_logger.remove()
        match config.default_log_sink:
            case "sys.stdout":
                log_sink: Any = sys.stdout
            case "sys.stderr":
                log_sink = sys.stderr
            case _:
                log_sink = config.default_log_sink
        default_logger.add(
            log_sink,
            level=config.default_log_level.value,
            format=self.formatter.format,
            serialize=config.json_log_serialize,
            catch=True,
        )


logger_manager = LoggerManager()


def logger() -> LoggerInterface:
    """Return the active logger."""
    return logger_manager.logger
