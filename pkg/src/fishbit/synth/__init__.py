"""Seeded ground-truth signals and respirometry traces for validation."""

from __future__ import annotations

from fishbit.synth.generator import (
    GroundTruth,
    ProtocolStep,
    SynthRecording,
    SynthSource,
    generate,
    swim_protocol,
)
from fishbit.synth.loader import PRESET_SCHEMA, PRESETS_DIR, list_presets, load_preset, validate_preset
from fishbit.synth.models import (
    BreathingModel,
    Chamber,
    FatigueModel,
    Mo2Model,
    SpeciesPreset,
    SwimModel,
)
from fishbit.synth.respirometry import respirometry_protocol

__all__ = [
    # Models
    "BreathingModel",
    "SwimModel",
    "FatigueModel",
    "SpeciesPreset",
    "Mo2Model",
    "Chamber",

    # Presets
    "PRESET_SCHEMA",
    "PRESETS_DIR",
    "list_presets",
    "load_preset",
    "validate_preset",

    # Generation
    "GroundTruth",
    "SynthRecording",
    "ProtocolStep",
    "generate",
    "swim_protocol",
    "SynthSource",
    "respirometry_protocol",
]
