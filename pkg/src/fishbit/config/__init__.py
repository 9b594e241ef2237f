"""Configuration layer: defaults, schema, file IO, validation and the manager."""

from __future__ import annotations

from fishbit.config.defaults import DEFAULT_CONFIG
from fishbit.config.io import load_config, merge_defaults, read_config, write_config
from fishbit.config.manager import ConfigManager
from fishbit.config.validation import validate_config

__all__ = [
    "DEFAULT_CONFIG",
    "ConfigManager",
    "load_config",
    "read_config",
    "merge_defaults",
    "write_config",
    "validate_config",
]
