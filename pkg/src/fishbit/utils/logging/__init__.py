# fishbit/utils/logging/__init__.py
"""Logging utilities for fishbit."""

from __future__ import annotations

from fishbit.utils.logging.adapters import ContextAdapter
from fishbit.utils.logging.core import get_logger, set_root_logger, setup_logging
from fishbit.utils.logging.decorators import log_performance
from fishbit.utils.logging.formatters import DATE_FORMAT, LOG_FORMAT, JsonFormatter

__all__ = [
    "setup_logging",
    "get_logger",
    "set_root_logger",
    "log_performance",
    "ContextAdapter",
    "JsonFormatter",
    "LOG_FORMAT",
    "DATE_FORMAT",
]
