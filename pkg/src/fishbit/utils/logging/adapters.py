# fishbit/utils/logging/adapters.py
"""Logger adapters for adding context to log messages."""

from __future__ import annotations

import logging


class ContextAdapter(logging.LoggerAdapter):
    """Prefix every message with ``[key=value]`` pairs and attach them as extras."""

    def __init__(self, logger: logging.Logger, context: dict | None = None):
        super().__init__(logger, context or {})

    def process(self, msg, kwargs):
        if self.extra:
            context_str = " ".join(f"[{k}={v}]" for k, v in self.extra.items())
            msg = f"{context_str} {msg}"

        kwargs.setdefault("extra", {})
        kwargs["extra"].update(self.extra)

        return msg, kwargs

    def bind(self, **context) -> "ContextAdapter":
        """Return a new adapter with extra context merged in."""
        merged = dict(self.extra)
        merged.update(context)
        return ContextAdapter(self.logger, merged)
