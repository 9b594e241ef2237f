# fishbit/utils/file/__init__.py
"""File operation utilities for fishbit."""

from __future__ import annotations

from fishbit.utils.file.atomic import atomic_write, atomic_write_bytes, atomic_write_json, read_json
from fishbit.utils.file.lock import FileLock

__all__ = [
    "atomic_write",
    "atomic_write_bytes",
    "atomic_write_json",
    "read_json",
    "FileLock",
]
