"""Package version, from installed metadata or the source checkout's pyproject.toml."""

import tomllib
from importlib.metadata import PackageNotFoundError, version
from pathlib import Path

DISTRIBUTION_NAME = "elemental-gev"
PYPROJECT_PATH = Path(__file__).parent.parent / "pyproject.toml"
UNKNOWN_VERSION = "unknown"


def read_pyproject_version(path: Path) -> str:
    """Return `project.version` from a pyproject file, or "unknown" if it cannot be read."""
    try:
        with path.open("rb") as f:
            return str(tomllib.load(f)["project"]["version"])
    except (OSError, tomllib.TOMLDecodeError, KeyError, TypeError):
        return UNKNOWN_VERSION


def get_version() -> str:
    """Get the current version of the package.

    Output headers record this string, so a source checkout reports the pyproject version
    rather than failing.

    Returns:
        str: The installed version, the pyproject version, or "unknown".

    """
    try:
        return version(DISTRIBUTION_NAME)
    except PackageNotFoundError:
        return read_pyproject_version(PYPROJECT_PATH)
