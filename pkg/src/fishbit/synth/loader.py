# fishbit/synth/loader.py
"""
Species presets stored as JSON next to this module.

Schema (``fishbit-preset/1``)::

    {
      "schema": "fishbit-preset/1",
      "name": "...",
      "description": "...",                 optional
      "breathing": {BreathingModel fields},
      "swim": {SwimModel fields},           optional, defaults apply per key
      "fatigue": {FatigueModel fields}      optional, defaults apply per key
    }

Unknown keys are rejected so a typo never silently falls back to a default.
"""

from __future__ import annotations

import json
from dataclasses import fields
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional

from fishbit.errors import InvalidPreset
from fishbit.synth.models import BreathingModel, FatigueModel, SpeciesPreset, SwimModel
from fishbit.utils import get_logger, resource_path

logger = get_logger(__name__)

PRESET_SCHEMA = "fishbit-preset/1"
PRESETS_DIR = resource_path("fishbit.synth", "presets")

_SECTIONS = {"breathing": BreathingModel, "swim": SwimModel, "fatigue": FatigueModel}
REQUIRED_BREATHING_KEYS = {"base_freq"}


def list_presets() -> List[str]:
    return sorted(p.stem for p in PRESETS_DIR.glob("*.json"))


def _section(name: str, raw: Any, cls):
    if raw is None:
        raw = {}
    if not isinstance(raw, dict):
        raise InvalidPreset(f"preset section '{name}' must be an object")

    allowed = {f.name for f in fields(cls)}
    unknown = sorted(set(raw) - allowed)
    if unknown:
        raise InvalidPreset(f"unknown keys in '{name}': {', '.join(unknown)}")

    try:
        return cls(**raw)
    except TypeError as e:
        raise InvalidPreset(f"bad '{name}' section: {e}") from e


def validate_preset(data: Mapping[str, Any]) -> SpeciesPreset:
    """Build a SpeciesPreset from a parsed preset document."""
    if not isinstance(data, Mapping):
        raise InvalidPreset("preset root must be an object")

    schema = data.get("schema", PRESET_SCHEMA)
    if schema != PRESET_SCHEMA:
        raise InvalidPreset(f"unsupported preset schema '{schema}'")

    name = data.get("name")
    if not isinstance(name, str) or not name:
        raise InvalidPreset("preset missing 'name'")

    breathing = data.get("breathing")
    if not isinstance(breathing, dict):
        raise InvalidPreset("preset missing 'breathing' section")
    missing = REQUIRED_BREATHING_KEYS - set(breathing)
    if missing:
        raise InvalidPreset(f"'breathing' missing keys: {', '.join(sorted(missing))}")

    unknown = sorted(set(data) - {"schema", "name", "description", *_SECTIONS})
    if unknown:
        raise InvalidPreset(f"unknown preset keys: {', '.join(unknown)}")

    return SpeciesPreset(
        name=name,
        **{key: _section(key, data.get(key), cls) for key, cls in _SECTIONS.items()},
    )


def _merge(data: Dict[str, Any], overrides: Mapping[str, Mapping[str, Any]]) -> Dict[str, Any]:
    merged = {k: (dict(v) if isinstance(v, dict) else v) for k, v in data.items()}
    for section, values in overrides.items():
        if section not in _SECTIONS:
            raise InvalidPreset(f"cannot override unknown section '{section}'")
        merged.setdefault(section, {}).update(values)
    return merged


def load_preset(
    name_or_path: str | Path,
    overrides: Optional[Mapping[str, Mapping[str, Any]]] = None,
) -> SpeciesPreset:
    """
    Load a bundled preset by name, or any preset file by path.

    Args:
        name_or_path: ``sea_bream``, ``sea_bass``, ... or a path to a JSON file
        overrides: Per-section values applied over the file, e.g.
            ``{"breathing": {"noise_std": 0.0}}``

    Raises:
        InvalidPreset: unknown name, unreadable file or invalid content
    """
    candidate = Path(name_or_path)
    if candidate.suffix == ".json" or candidate.exists():
        path = candidate
    else:
        path = PRESETS_DIR / f"{name_or_path}.json"
        if not path.exists():
            raise InvalidPreset(
                f"unknown preset '{name_or_path}' (known: {', '.join(list_presets())})"
            )

    try:
        with path.open("r", encoding="utf-8") as f:
            data = json.load(f)
    except FileNotFoundError as e:
        raise InvalidPreset(f"preset file not found: {path}") from e
    except json.JSONDecodeError as e:
        raise InvalidPreset(f"invalid JSON in preset {path}: {e}") from e

    if overrides:
        data = _merge(data, overrides)

    preset = validate_preset(data)
    logger.debug(f"Loaded preset '{preset.name}' from {path}")
    return preset
