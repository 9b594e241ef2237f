# fishbit/utils/logging/core.py
"""Core logging setup and configuration."""

from __future__ import annotations

import logging
import sys
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Optional

from fishbit.utils.logging.adapters import ContextAdapter
from fishbit.utils.logging.formatters import (
    CONSOLE_FORMAT,
    DATE_FORMAT,
    LOG_FORMAT,
    JsonFormatter,
)

ROOT_LOGGER_NAME = "fishbit"

# Global logger instance
_logger: logging.Logger | None = None


def setup_logging(
    log_dir: Optional[Path] = None,
    *,
    log_level: str = "INFO",
    max_bytes: int = 10 * 1024 * 1024,  # 10MB
    backup_count: int = 5,
    json_format: bool = False,
    stream=None,
) -> logging.Logger:
    """
    Setup package-wide logging.

    Diagnostics always go to stderr so command output on stdout stays clean.
    A rotating file handler is added only when ``log_dir`` is given.

    Args:
        log_dir: Directory for ``fishbit.log`` (None disables file logging)
        log_level: Logging level (DEBUG, INFO, WARNING, ERROR)
        max_bytes: Maximum size of log file before rotation
        backup_count: Number of backup files to keep
        json_format: Whether to use JSON format for the file and console
        stream: Console stream override (defaults to sys.stderr)

    Returns:
        Root logger instance
    """
    numeric_level = getattr(logging, log_level.upper(), logging.INFO)

    root_logger = logging.getLogger(ROOT_LOGGER_NAME)
    root_logger.setLevel(numeric_level)
    for handler in list(root_logger.handlers):
        root_logger.removeHandler(handler)
        handler.close()
    root_logger.propagate = False

    console_handler = logging.StreamHandler(stream or sys.stderr)
    console_handler.setLevel(numeric_level)
    if json_format:
        console_handler.setFormatter(JsonFormatter())
    else:
        console_handler.setFormatter(logging.Formatter(CONSOLE_FORMAT))
    root_logger.addHandler(console_handler)

    if log_dir is not None:
        log_dir = Path(log_dir)
        log_dir.mkdir(parents=True, exist_ok=True)
        file_handler = RotatingFileHandler(
            log_dir / "fishbit.log",
            maxBytes=max_bytes,
            backupCount=backup_count,
            encoding="utf-8",
        )
        if json_format:
            file_handler.setFormatter(JsonFormatter())
        else:
            file_handler.setFormatter(logging.Formatter(LOG_FORMAT, DATE_FORMAT))
        root_logger.addHandler(file_handler)
        root_logger.debug(f"Log file: {log_dir / 'fishbit.log'}")

    root_logger.debug(f"Log level: {log_level}")

    global _logger
    _logger = root_logger

    return root_logger


def get_logger(name: str | None = None, context: dict | None = None) -> logging.Logger:
    """
    Get a logger instance with optional context.

    Args:
        name: Logger name (usually __name__)
        context: Additional context to include in all log messages

    Returns:
        Logger instance
    """
    global _logger
    if _logger is None:
        _logger = logging.getLogger(ROOT_LOGGER_NAME)

    if name:
        if name == ROOT_LOGGER_NAME or name.startswith(ROOT_LOGGER_NAME + "."):
            name = name[len(ROOT_LOGGER_NAME) + 1:]
        logger = _logger.getChild(name) if name else _logger
    else:
        logger = _logger

    if context:
        return ContextAdapter(logger, context)

    return logger


def set_root_logger(logger: logging.Logger) -> None:
    """Set the root logger instance."""
    global _logger
    _logger = logger
