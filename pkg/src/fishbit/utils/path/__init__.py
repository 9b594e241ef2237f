# fishbit/utils/path/__init__.py
"""Path resolution utilities for fishbit."""

from __future__ import annotations

from fishbit.utils.path.resolver import (
    get_appdata_root,
    get_default_config_path,
    get_logs_root,
    resource_path,
)

__all__ = [
    "resource_path",
    "get_appdata_root",
    "get_default_config_path",
    "get_logs_root",
]
