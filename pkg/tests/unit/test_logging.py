"""Tests for logging functions."""

from pathlib import Path
from unittest.mock import Mock

import pytest

from elemental.config import Config, LogLevel
from elemental.logger import (
    SUBSYSTEM_COLOR_MAP,
    Formatter,
    LoggerInterface,
    LoggerManager,
    SafeLogger,
    logger,
    logger_manager,
)


@pytest.mark.parametrize(
    ("record", "expected_color"),
    [
        (
            {"name": "elemental.coefficients", "function": "beta_recursion_table"},
            SUBSYSTEM_COLOR_MAP["beta"],
        ),
        (
            {"name": "elemental.estimator", "function": "combined_estimate"},
            SUBSYSTEM_COLOR_MAP["estimat"],
        ),
        (
            {"name": "elemental.mle_baseline", "function": "fit_mle"},
            SUBSYSTEM_COLOR_MAP["mle"],
        ),
        (
            {"name": "elemental.harness.sweep", "function": "run_sweep"},
            SUBSYSTEM_COLOR_MAP["sweep"],
        ),
        (
            {"name": "elemental.harness.studies", "function": "run_midpoint_study"},
            SUBSYSTEM_COLOR_MAP["study"],
        ),
        (
            {"name": "elemental.distributions", "function": "sample_gev"},
            SUBSYSTEM_COLOR_MAP["sample"],
        ),
        (
            {"name": "elemental.cli", "function": "version"},
            "white",
        ),
    ],
)
def test_logger_formatter_get_subsystem_color(record: dict, expected_color: str) -> None:
    """Test the logger formatter get_subsystem_color method."""
    logger_formatter = Formatter()
    assert logger_formatter._get_subsystem_color_(record) == expected_color


def test_logger_sanitize_message() -> None:
    """Test the logger sanitize_message method."""
    logger_formatter = Formatter()
    assert logger_formatter._sanitize_message_("<test>") == r"\<test\>"
    assert logger_formatter._sanitize_message_("{test} {{test}}") == "{{test}} {{test}}"
    assert logger_formatter._sanitize_message_('{"xi": "<0>"}') == '{{"xi": "\\<0\\>"}}'

    # a long message gets truncated correctly
    long_message = "cell\n" * 100
    truncated_message = logger_formatter._sanitize_message_(long_message)
    assert len(truncated_message.split("\n")) == logger_formatter.max_lines
    assert truncated_message.endswith("cell\n")
    assert truncated_message.startswith("cell\n")


def test_logger_manager_initialization() -> None:
    """Test initialization of LoggerManager with default logger."""
    logger_manager = LoggerManager()
    assert logger_manager.custom_logger is False
    assert isinstance(logger_manager.logger, SafeLogger)


def test_logger_manager_with_custom_logger() -> None:
    """Test initialization of LoggerManager with a custom logger."""
    mock_logger = Mock(spec=LoggerInterface)
    logger_manager = LoggerManager(custom_logger=mock_logger)

    assert logger_manager.logger == mock_logger
    assert logger_manager.custom_logger is False


def test_set_logger() -> None:
    """Test setting a custom logger."""
    logger_manager = LoggerManager()
    mock_logger = Mock(spec=LoggerInterface)

    logger_manager.set_logger(mock_logger)
    assert logger_manager.logger == mock_logger
    assert logger_manager.custom_logger is True


def test_configure_from_config_file_sink(tmp_path: Path) -> None:
    """Test a file sink receives records at the configured level."""
    log_file = tmp_path / "elemental.log"
    manager = LoggerManager()
    manager.configure_from_config(
        Config(default_log_sink=str(log_file), default_log_level=LogLevel.INFO),
    )
    manager.logger.debug("hidden")
    manager.logger.info("Finished sweep cell xi=0.0")

    text = log_file.read_text(encoding="utf-8")
    assert "Finished sweep cell xi=0.0" in text
    assert "hidden" not in text


def test_configure_from_config_json(tmp_path: Path) -> None:
    """Test serialised logs are written one JSON record per line."""
    log_file = tmp_path / "elemental.jsonl"
    manager = LoggerManager()
    manager.configure_from_config(
        Config(default_log_sink=str(log_file), json_log_serialize=True),
    )
    manager.logger.warning("rejected 3 degenerate draws")

    text = log_file.read_text(encoding="utf-8")
    assert text.startswith("{")
    assert "rejected 3 degenerate draws" in text


def test_configure_from_config_stdout() -> None:
    """Test configuring the logger with the stdout sink."""
    manager = LoggerManager()
    manager.configure_from_config(
        Config(default_log_sink="sys.stdout", default_log_level=LogLevel.DEBUG),
    )
    assert manager.custom_logger is False


def test_configure_from_config_custom_logger() -> None:
    """Test warning when configuring logger with a custom logger set."""
    mock_logger = Mock(spec=LoggerInterface)
    logger_manager = LoggerManager(custom_logger=mock_logger)
    logger_manager.set_logger(mock_logger)

    mock_config = Mock(
        default_log_sink="sys.stderr",
        default_log_level="INFO",
        json_log_serialize=True,
    )

    logger_manager.configure_from_config(mock_config)
    mock_logger.warning.assert_called_once_with(
        "Custom logger is in use; skipping log level configuration.",
    )


def test_logger() -> None:
    """Test the logger function gives access to the current logger."""
    mock_logger = Mock(spec=LoggerInterface)
    logger_manager.set_logger(mock_logger)

    assert logger() == mock_logger


@pytest.mark.parametrize("level", ["debug", "info", "warning", "error", "critical", "exception"])
def test_safe_logger_forwards(level: str) -> None:
    """Test each level is forwarded to the child logger."""
    child = Mock(spec=LoggerInterface)
    safe = SafeLogger(child)

    getattr(safe, level)("message", 1, key="value")
    getattr(child, level).assert_called_once_with("message", 1, key="value")


def test_safe_logger_swallows_errors() -> None:
    """Test a failing child logger reports the failure instead of raising."""
    child = Mock(spec=LoggerInterface)
    child.info.side_effect = RuntimeError("sink closed")
    safe = SafeLogger(child)

    safe.info("message")
    child.error.assert_called_once_with("Failed to log: sink closed")
