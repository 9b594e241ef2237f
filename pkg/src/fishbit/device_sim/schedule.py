# fishbit/device_sim/schedule.py
"""Duty-cycle programs and their feasibility check."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Tuple

from fishbit.device_sim.config import DeviceConfig
from fishbit.errors import ScheduleInfeasible, ScheduleWarning, UnknownSchedule
from fishbit.utils import get_logger

logger = get_logger(__name__)

DAY = 86400.0
HOUR = 3600.0


class RecordMode(str, Enum):
    RAW = "raw"
    PROCESSED = "processed"

    @property
    def code(self) -> int:
        return 0 if self is RecordMode.RAW else 1


@dataclass(frozen=True)
class ScheduleProgram:
    window_seconds: float = 120.0
    period_seconds: float = 900.0
    total_duration_seconds: float = DAY
    mode: RecordMode = RecordMode.PROCESSED

    @property
    def window_count(self) -> int:
        """Windows that start on the period grid and end within the duration."""
        if self.window_seconds <= 0 or self.total_duration_seconds < self.window_seconds:
            return 0
        span = self.total_duration_seconds - self.window_seconds
        return int(math.floor(span / self.period_seconds + 1e-9)) + 1

    @property
    def active_seconds(self) -> float:
        return self.window_count * self.window_seconds

    def window_starts(self) -> list[float]:
        return [k * self.period_seconds for k in range(self.window_count)]


# Named programs: bursts every 15 min for 2 days, hourly for a week, every
# 3 h for three weeks, back-to-back on-board windows, and three raw captures
# four hours apart.
SCHEDULE_PRESETS: Dict[str, ScheduleProgram] = {
    "burst-2d": ScheduleProgram(120.0, 900.0, 2 * DAY, RecordMode.PROCESSED),
    "week-1": ScheduleProgram(120.0, HOUR, 7 * DAY, RecordMode.PROCESSED),
    "weeks-3": ScheduleProgram(120.0, 3 * HOUR, 21 * DAY, RecordMode.PROCESSED),
    "continuous": ScheduleProgram(122.88, 122.88, DAY, RecordMode.PROCESSED),
    "circadian-raw": ScheduleProgram(120.0, 4 * HOUR, 8 * HOUR + 120.0, RecordMode.RAW),
}


def get_schedule(name: str) -> ScheduleProgram:
    try:
        return SCHEDULE_PRESETS[name]
    except KeyError:
        known = ", ".join(sorted(SCHEDULE_PRESETS))
        raise UnknownSchedule(f"unknown schedule '{name}' (known: {known})") from None


@dataclass(frozen=True)
class ScheduleReport:
    window_count: int
    active_seconds: float
    warnings: Tuple[str, ...] = ()

    @property
    def feasible(self) -> bool:
        return not self.warnings


def validate_schedule(
    program: ScheduleProgram,
    cfg: DeviceConfig,
    *,
    strict: bool = True,
) -> ScheduleReport:
    """
    Check a program against the device budgets.

    Structural errors and raw-capacity overruns raise ScheduleInfeasible
    (the latter only when ``strict``). Exceeding the battery budget is a
    ScheduleWarning: the run is truncated when the battery runs out.
    """
    if program.window_seconds <= 0 or program.period_seconds <= 0:
        raise ScheduleInfeasible("window and period must be positive")
    if program.window_seconds > program.period_seconds:
        raise ScheduleInfeasible(
            f"window {program.window_seconds} s longer than period {program.period_seconds} s"
        )
    if program.window_count == 0:
        raise ScheduleInfeasible(
            f"duration {program.total_duration_seconds} s holds no full {program.window_seconds} s window"
        )

    notes: list[str] = []
    active = program.active_seconds

    if program.mode is RecordMode.RAW and active > cfg.raw_capacity_seconds + 1e-9:
        message = (
            f"raw schedule needs {active:g} s of samples; flash holds "
            f"{cfg.raw_capacity_seconds:g} s at {cfg.fs:g} Hz"
        )
        if strict:
            raise ScheduleInfeasible(message)
        notes.append(message)

    if active > cfg.battery_active_seconds + 1e-9:
        notes.append(
            f"schedule needs {active:g} s of active time; battery allows "
            f"{cfg.battery_active_seconds:g} s"
        )

    for note in notes:
        logger.warning(f"Schedule truncated at run time: {note}")
        warnings.warn(note, ScheduleWarning, stacklevel=2)

    return ScheduleReport(window_count=program.window_count, active_seconds=active, warnings=tuple(notes))
