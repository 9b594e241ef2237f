# fishbit/utils/__init__.py
"""
Utility modules for fishbit.

Provides:
- File operations (atomic writes, locking)
- Logging setup and utilities
- Path resolution
"""

from __future__ import annotations

from fishbit.utils.file import (
    FileLock,
    atomic_write,
    atomic_write_bytes,
    atomic_write_json,
    read_json,
)
from fishbit.utils.logging import (
    ContextAdapter,
    get_logger,
    log_performance,
    set_root_logger,
    setup_logging,
)
from fishbit.utils.path import (
    get_appdata_root,
    get_default_config_path,
    get_logs_root,
    resource_path,
)

__all__ = [
    # File
    "atomic_write",
    "atomic_write_bytes",
    "atomic_write_json",
    "read_json",
    "FileLock",

    # Logging
    "setup_logging",
    "get_logger",
    "set_root_logger",
    "log_performance",
    "ContextAdapter",

    # Path
    "resource_path",
    "get_appdata_root",
    "get_default_config_path",
    "get_logs_root",
]
