# fishbit/errors.py
"""Exception and warning hierarchy shared by every fishbit package."""

from __future__ import annotations


class FishbitError(RuntimeError):
    """Root of all fishbit failures."""


class ConfigError(FishbitError):
    pass


# =====================================================
# signal_core
# =====================================================

class SignalError(FishbitError):
    pass


class InvalidConfig(SignalError):
    pass


class EmptyInput(SignalError):
    pass


class FrameTooShort(SignalError):
    pass


class InsufficientData(SignalError):
    pass


class SampleOutOfRange(SignalError):
    """Acceleration beyond the sensor full scale."""


# =====================================================
# device_sim
# =====================================================

class DeviceError(FishbitError):
    pass


class ScheduleInfeasible(DeviceError):
    pass


class MixedModes(DeviceError):
    pass


class OutOfRange(DeviceError):
    pass


class UnknownSchedule(DeviceError):
    pass


class LogFormatError(DeviceError):
    pass


class BadMagic(LogFormatError):
    pass


class UnsupportedVersion(LogFormatError):
    pass


class CorruptRecord(LogFormatError):
    pass


class TruncatedHeader(LogFormatError):
    pass


# =====================================================
# synth
# =====================================================

class SynthError(FishbitError):
    pass


class InvalidPreset(SynthError):
    pass


class InvalidSpeeds(SynthError):
    pass


# =====================================================
# analysis
# =====================================================

class AnalysisError(FishbitError):
    pass


class InsufficientSamples(AnalysisError):
    pass


class TooFewSteps(AnalysisError):
    pass


class DegenerateInput(AnalysisError):
    pass


class SingularFeatures(AnalysisError):
    pass


class ClassImbalanceBelowMinimum(AnalysisError):
    pass


class UnfittedModel(AnalysisError):
    pass


# =====================================================
# cli
# =====================================================

class CliError(FishbitError):
    pass


class UsageError(CliError):
    pass


class ParseError(CliError):
    """Malformed input file; carries the 1-based line number."""

    def __init__(self, message: str, *, path: str | None = None, line: int | None = None):
        self.path = path
        self.line = line
        where = ""
        if path is not None:
            where = f"{path}:"
        if line is not None:
            where = f"{where}{line}: "
        elif where:
            where = f"{where} "
        super().__init__(f"{where}{message}")


class SchemaMismatch(CliError):
    def __init__(self, column: str, *, path: str | None = None):
        self.column = column
        self.path = path
        suffix = f" in {path}" if path else ""
        super().__init__(f"missing column '{column}'{suffix}")


# =====================================================
# Warnings
# =====================================================

class NonDecreasingSaturation(UserWarning):
    """Chamber O2 did not fall during a closed phase (suspect seal)."""


class ScheduleWarning(UserWarning):
    """Schedule exceeds a soft budget and will be truncated at run time."""
