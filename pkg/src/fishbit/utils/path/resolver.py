# fishbit/utils/path/resolver.py
"""Path resolution for packaged resources, config and app-data directories."""

from __future__ import annotations

import os
from importlib import resources
from pathlib import Path
from typing import Optional

from fishbit.constants import ENV_CONFIG, ENV_HOME


def resource_path(package: str, *parts: str) -> Path:
    """
    Absolute path to a file shipped inside a fishbit package.

    Example:
        >>> resource_path("fishbit.synth", "presets", "sea_bream.json")
    """
    base = resources.files(package)
    for part in parts:
        base = base.joinpath(part)
    return Path(str(base))


def get_appdata_root() -> Path:
    """
    Get the application data directory.

    ``FISHBIT_HOME`` wins; otherwise ``~/.fishbit``. Created on demand.
    """
    raw = os.getenv(ENV_HOME)
    root = Path(raw).expanduser() if raw else Path.home() / ".fishbit"
    root.mkdir(parents=True, exist_ok=True)
    return root


def get_logs_root() -> Path:
    """Root directory for log files (created if it doesn't exist)."""
    logs_root = get_appdata_root() / "logs"
    logs_root.mkdir(parents=True, exist_ok=True)
    return logs_root


def get_default_config_path() -> Optional[Path]:
    """
    Config file named by ``FISHBIT_CONFIG``, if any.

    Returns:
        The path, or None when the variable is unset or empty
    """
    raw = os.getenv(ENV_CONFIG, "").strip()
    if not raw:
        return None
    return Path(raw).expanduser()
