from __future__ import annotations

import json
from copy import deepcopy
from pathlib import Path
from typing import Any, Dict

from fishbit.config.defaults import DEFAULT_CONFIG
from fishbit.errors import ConfigError
from fishbit.utils import atomic_write_json, get_logger

logger = get_logger(__name__)


def read_config(path: Path) -> Dict[str, Any]:
    """Read a JSON config file as written, without defaults."""
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"Config file not found: {path}")

    try:
        with path.open("r", encoding="utf-8") as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise ConfigError(f"Invalid JSON in config {path}: {e}") from e

    if not isinstance(data, dict):
        raise ConfigError(f"Config root must be an object: {path}")

    logger.debug(f"Read config from {path}")
    return data


def load_config(path: Path) -> Dict[str, Any]:
    """Read a JSON config file and merge it over the defaults."""
    return merge_defaults(read_config(path))


def write_config(path: Path, data: Dict[str, Any]) -> None:
    atomic_write_json(path, data)
    logger.debug(f"Config written to {path}")


def merge_defaults(data: Dict[str, Any], base: Dict[str, Any] | None = None) -> Dict[str, Any]:
    """Section-wise overlay of ``data`` onto ``base`` (defaults when omitted)."""
    merged = deepcopy(base if base is not None else DEFAULT_CONFIG)

    for section, values in data.items():
        if isinstance(values, dict):
            merged.setdefault(section, {}).update(values)
        else:
            merged[section] = values

    return merged
