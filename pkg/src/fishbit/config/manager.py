# fishbit/config/manager.py
from __future__ import annotations

import hashlib
import json
from copy import deepcopy
from pathlib import Path
from typing import Any, Dict, Optional

from fishbit.config.io import merge_defaults, read_config, write_config
from fishbit.config.schema import AppConfig
from fishbit.config.validation import validate_config
from fishbit.utils import get_default_config_path, get_logger

logger = get_logger(__name__)


class ConfigManager:
    """
    Single source of truth for the effective configuration of one run.

    Layers, lowest first: built-in defaults, command-line overrides, then the
    config file (explicit path or ``FISHBIT_CONFIG``).
    """

    def __init__(
        self,
        path: Optional[Path] = None,
        overrides: Optional[Dict[str, Dict[str, Any]]] = None,
    ):
        self.path: Optional[Path] = Path(path) if path else get_default_config_path()

        data = merge_defaults(overrides or {})
        if self.path is not None:
            data = merge_defaults(read_config(self.path), base=data)
            logger.info(f"Using config file {self.path}")

        validate_config(data)
        self.data: AppConfig = data  # type: ignore[assignment]

    # ---------------------------
    # Persistence
    # ---------------------------

    def save(self, path: Optional[Path] = None) -> Path:
        target = Path(path) if path else self.path
        if target is None:
            raise ValueError("No config path to save to")
        write_config(target, self.data)
        return target

    # ---------------------------
    # Generic accessors
    # ---------------------------

    def get(self, section: str, key: str, default: Any = None) -> Any:
        return self.data.get(section, {}).get(key, default)

    def set(self, section: str, key: str, value: Any) -> None:
        if section not in self.data:
            self.data[section] = {}  # type: ignore[literal-required]
        self.data[section][key] = value  # type: ignore[literal-required]

    def section(self, section: str) -> Dict[str, Any]:
        return deepcopy(self.data.get(section, {}))

    # ---------------------------
    # Reproducibility
    # ---------------------------

    def digest(self) -> str:
        """SHA-256 over the canonical JSON of the effective config."""
        canonical = json.dumps(self.data, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()
