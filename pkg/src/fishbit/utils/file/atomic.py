# fishbit/utils/file/atomic.py
"""Atomic file write operations."""

from __future__ import annotations

import errno
import json
import os
import tempfile
import time
from pathlib import Path
from typing import Any, Optional

from fishbit.utils.logging.core import get_logger

logger = get_logger(__name__)


def atomic_write_bytes(
    path: Path,
    content: bytes,
    max_retries: int = 3,
) -> None:
    """
    Write bytes to a file atomically.

    Uses a temporary file in the target directory, fsync and rename.
    Creates parent directories if they don't exist.

    Args:
        path: Target file path
        content: Bytes to write
        max_retries: Number of retry attempts on failure

    Raises:
        OSError: If write fails after all retries
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)

    for attempt in range(max_retries):
        try:
            _atomic_write_impl(path, content)
            logger.debug(f"Wrote {len(content)} bytes to {path} (attempt {attempt + 1})")
            return
        except OSError as e:
            if attempt == max_retries - 1:
                logger.error(f"Failed to write {path} after {max_retries} attempts: {e}")
                raise

            wait_time = 0.1 * (2 ** attempt)
            logger.warning(f"Write attempt {attempt + 1} failed, retrying in {wait_time}s: {e}")
            time.sleep(wait_time)


def atomic_write(
    path: Path,
    content: str,
    encoding: str = "utf-8",
    max_retries: int = 3,
) -> None:
    """Write text atomically with ``\\n`` line endings on every platform."""
    atomic_write_bytes(path, content.encode(encoding), max_retries=max_retries)


def atomic_write_json(
    path: Path,
    data: Any,
    indent: Optional[int] = 2,
) -> None:
    """
    Write JSON atomically with sorted keys, so equal data gives equal bytes.

    Args:
        path: Target JSON file path
        data: Data to serialize to JSON
        indent: JSON indentation (None for compact)
    """
    content = json.dumps(data, indent=indent, ensure_ascii=False, sort_keys=True) + "\n"
    atomic_write(path, content)


def _atomic_write_impl(path: Path, content: bytes) -> None:
    fd, temp_path = tempfile.mkstemp(
        dir=str(path.parent),
        prefix=f".{path.name}.tmp-",
        suffix=".atomic",
    )

    try:
        with os.fdopen(fd, "wb") as f:
            f.write(content)
            f.flush()
            os.fsync(f.fileno())

        temp_file = Path(temp_path)
        if os.name == "nt":
            _atomic_replace_windows(temp_file, path)
        else:
            temp_file.replace(path)

    except Exception:
        try:
            os.unlink(temp_path)
        except OSError:
            pass
        raise


def _atomic_replace_windows(src: Path, dst: Path) -> None:
    """Atomic replace on Windows with retries."""
    max_retries = 5
    retry_delay = 0.1

    for attempt in range(max_retries):
        try:
            src.replace(dst)
            return
        except PermissionError:
            if attempt == max_retries - 1:
                raise
            time.sleep(retry_delay * (2 ** attempt))
        except OSError as e:
            if e.errno != errno.EACCES or attempt == max_retries - 1:
                raise
            time.sleep(retry_delay * (2 ** attempt))


def read_json(path: Path, default: Any = None) -> Any:
    """Read a JSON file, returning ``default`` when it is missing."""
    path = Path(path)
    if not path.exists():
        return default
    with path.open("r", encoding="utf-8") as f:
        return json.load(f)
