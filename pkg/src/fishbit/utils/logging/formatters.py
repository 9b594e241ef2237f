# fishbit/utils/logging/formatters.py
"""Logging formatters for structured and standard output."""

from __future__ import annotations

import json
import logging

LOG_FORMAT = "%(asctime)s | %(levelname)8s | %(name)s | %(message)s"
CONSOLE_FORMAT = "%(levelname)s: %(message)s"
DATE_FORMAT = "%Y-%m-%d %H:%M:%S"

# Structured JSON layout for machine parsing
JSON_LOG_FIELDS = {
    "timestamp": "asctime",
    "level": "levelname",
    "logger": "name",
    "function": "funcName",
    "line": "lineno",
    "message": "message",
}

# Context keys that ContextAdapter attaches to records
CONTEXT_KEYS = ("window_start", "mode", "step", "command")


class JsonFormatter(logging.Formatter):
    """Format logs as one JSON object per line."""

    def __init__(self, fields: dict[str, str] | None = None, datefmt: str | None = None):
        super().__init__(datefmt=datefmt or DATE_FORMAT)
        self.fields = fields if fields else JSON_LOG_FIELDS

    def format(self, record: logging.LogRecord) -> str:
        record.message = record.getMessage()
        record.asctime = self.formatTime(record, self.datefmt)

        entry = {key: getattr(record, attr, "") for key, attr in self.fields.items()}
        for key in CONTEXT_KEYS:
            if hasattr(record, key):
                entry[key] = getattr(record, key)

        if record.exc_info:
            entry["exception"] = self.formatException(record.exc_info)

        return json.dumps(entry, default=str)
