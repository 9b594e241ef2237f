# fishbit/utils/logging/decorators.py
"""Performance logging decorator."""

from __future__ import annotations

import time
from functools import wraps

from .core import get_logger


def log_performance(logger=None):
    """Decorator to log function execution time at DEBUG, failures at ERROR."""
    def decorator(func):
        @wraps(func)
        def wrapper(*args, **kwargs):
            log = logger or get_logger(func.__module__)
            start = time.perf_counter()
            try:
                result = func(*args, **kwargs)
            except Exception as e:
                elapsed = (time.perf_counter() - start) * 1000
                log.error(f"{func.__name__} failed after {elapsed:.2f}ms: {e}")
                raise
            elapsed = (time.perf_counter() - start) * 1000
            log.debug(f"{func.__name__} completed in {elapsed:.2f}ms")
            return result

        return wrapper
    return decorator
