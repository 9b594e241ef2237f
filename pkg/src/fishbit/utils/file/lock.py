# fishbit/utils/file/lock.py

"""Output-directory lock so two commands never interleave their writes."""

from __future__ import annotations

import json
import os
import sys
import time
from pathlib import Path
from typing import Optional

import psutil

from fishbit.utils.logging.core import get_logger

logger = get_logger(__name__)

LOCK_NAME = ".fishbit.lock"


class FileLock:
    """
    Exclusive lock file holding the owner's pid and command line.

    A lock is taken over when its owner is gone: the file is empty or
    unreadable, the pid no longer exists, or the pid now belongs to a
    process started after the lock was written.

    Usage:
        with FileLock.for_directory(out_dir):
            # write outputs and manifest
    """

    def __init__(self, lock_path: Path, timeout: float = 10.0, poll: float = 0.05):
        self.lock_path = Path(lock_path)
        self.timeout = timeout
        self.poll = poll
        self._fd: Optional[int] = None

    @classmethod
    def for_directory(cls, directory: Path, timeout: float = 10.0) -> "FileLock":
        return cls(Path(directory) / LOCK_NAME, timeout=timeout)

    def owner(self) -> Optional[dict]:
        """``{"pid": ..., "command": ...}`` of the current holder, if readable."""
        try:
            data = json.loads(self.lock_path.read_text(encoding="utf-8"))
        except (OSError, ValueError):
            return None
        return data if isinstance(data, dict) and "pid" in data else None

    def _is_stale(self) -> bool:
        holder = self.owner()
        try:
            pid = int(holder["pid"]) if holder else -1
        except (TypeError, ValueError):
            return True
        if pid <= 0 or not psutil.pid_exists(pid):
            return True
        try:
            started = psutil.Process(pid).create_time()
            return started > self.lock_path.stat().st_mtime + 1.0
        except (psutil.NoSuchProcess, psutil.AccessDenied, OSError):
            return False

    def __enter__(self) -> "FileLock":
        self.lock_path.parent.mkdir(parents=True, exist_ok=True)
        payload = json.dumps({"pid": os.getpid(), "command": " ".join(sys.argv[:2])}).encode()

        deadline = time.monotonic() + self.timeout
        while True:
            try:
                self._fd = os.open(str(self.lock_path), os.O_CREAT | os.O_EXCL | os.O_WRONLY)
                os.write(self._fd, payload)
                os.fsync(self._fd)
                return self
            except FileExistsError:
                if self._is_stale():
                    logger.warning(f"Removing stale lock {self.lock_path} (owner {self.owner()})")
                    try:
                        self.lock_path.unlink()
                        continue
                    except OSError:
                        pass
                if time.monotonic() > deadline:
                    raise TimeoutError(f"{self.lock_path} is held by {self.owner()}")
                time.sleep(self.poll)

    def __exit__(self, *args) -> None:
        if self._fd is None:
            return
        os.close(self._fd)
        self._fd = None
        try:
            self.lock_path.unlink()
        except OSError:
            pass
