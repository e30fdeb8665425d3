"""Configuration for pytest."""

from collections.abc import Iterator

import dotenv
import pytest

from elemental.config import ENV_PREFIX, Config
from elemental.logger import logger_manager


def pytest_sessionstart(session: pytest.Session) -> None:  # noqa: ARG001
    """Load environment variables from .env file for testing.

    NB This is a pytest hook that is called before test discovery runs,
    meaning module-level objects will be configured using the env vars
    in .env.
    """
    dotenv.load_dotenv(override=True)


@pytest.fixture(autouse=True)
def clean_env(monkeypatch: pytest.MonkeyPatch) -> None:
    """Unset package env vars so every test starts from field defaults."""
    for name in Config.model_fields:
        monkeypatch.delenv(f"{ENV_PREFIX}{name.upper()}", raising=False)
    monkeypatch.delenv(f"{ENV_PREFIX}LOG_LEVEL", raising=False)
    monkeypatch.delenv(f"{ENV_PREFIX}LOG_SINK", raising=False)


@pytest.fixture(autouse=True)
def restore_logger() -> Iterator[None]:
    """Put the package logger back after tests that replace or reconfigure it."""
    active = logger_manager.logger
    custom = logger_manager.custom_logger
    yield
    logger_manager._logger = active
    logger_manager.custom_logger = custom
    if not custom:
        logger_manager.configure_from_config(Config.from_default())
