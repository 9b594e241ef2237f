# fishbit/device_sim/simulator.py
"""Time-stepped simulation of one logger running one schedule."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional

from fishbit.device_sim.codec import HEADER_BYTES
from fishbit.device_sim.config import DeviceConfig
from fishbit.device_sim.records import LogRecord, RawRecord, quantize_series, quantize_window
from fishbit.device_sim.schedule import RecordMode, ScheduleProgram, ScheduleReport, validate_schedule
from fishbit.device_sim.sources import AccelSource
from fishbit.signal_core import EstimatorConfig, EstimatorMode, process_window
from fishbit.utils import ContextAdapter, get_logger, log_performance

logger = get_logger(__name__)


class DeviceStatus(str, Enum):
    IDLE = "idle"
    ACQUIRING = "acquiring"
    FULL = "full"
    BATTERY_EXHAUSTED = "battery_exhausted"
    DONE = "done"


@dataclass
class DeviceState:
    """Mutable logger state; owned by exactly one simulation."""

    elapsed: float = 0.0
    stored_records: List[LogRecord] = field(default_factory=list)
    flash_used: int = 0
    battery_used: float = 0.0
    status: DeviceStatus = DeviceStatus.IDLE

    @property
    def record_count(self) -> int:
        return len(self.stored_records)

    @property
    def download_bytes(self) -> int:
        return HEADER_BYTES + self.flash_used

    def summary(self) -> dict:
        return {
            "status": self.status.value,
            "elapsed_s": round(self.elapsed, 6),
            "record_count": self.record_count,
            "flash_used_bytes": self.flash_used,
            "download_bytes": self.download_bytes,
            "battery_used_s": round(self.battery_used, 6),
        }


@dataclass(frozen=True)
class SimulationResult:
    state: DeviceState
    report: ScheduleReport
    mode: RecordMode

    @property
    def records(self) -> List[LogRecord]:
        return self.state.stored_records


def _store_raw(state: DeviceState, program: ScheduleProgram, source: AccelSource,
               cfg: DeviceConfig, start: float) -> bool:
    """Acquire one raw window; False once the flash buffer is full."""
    series = source.window(start, program.window_seconds, cfg.fs)
    records = quantize_series(series, cfg)

    room = cfg.raw_capacity_samples - state.record_count
    kept = records[: max(room, 0)]
    state.stored_records.extend(kept)
    state.flash_used += len(kept) * RawRecord.size
    state.battery_used += len(kept) / cfg.fs
    state.elapsed = start + len(kept) / cfg.fs
    return len(kept) == len(records)


def _store_processed(state: DeviceState, program: ScheduleProgram, source: AccelSource,
                     cfg: DeviceConfig, est: EstimatorConfig, start: float) -> Optional[DeviceStatus]:
    """Acquire and process one window; the terminal status if the device stops."""
    remaining = cfg.battery_active_seconds - state.battery_used
    if program.window_seconds > remaining + 1e-9:
        state.elapsed = start + max(remaining, 0.0)
        state.battery_used = cfg.battery_active_seconds
        return DeviceStatus.BATTERY_EXHAUSTED

    series = source.window(start, program.window_seconds, cfg.fs)
    record = quantize_window(process_window(series, est, EstimatorMode.ONBOARD, window_start=start))
    if state.flash_used + record.size > cfg.flash_bytes:
        state.elapsed = start
        return DeviceStatus.FULL

    state.stored_records.append(record)
    state.flash_used += record.size
    state.battery_used += program.window_seconds
    state.elapsed = start + program.window_seconds
    return None


@log_performance()
def run_schedule(
    program: ScheduleProgram,
    source: AccelSource,
    cfg: DeviceConfig,
    *,
    estimator: Optional[EstimatorConfig] = None,
    strict: bool = True,
) -> SimulationResult:
    """
    Run ``program`` against ``source`` and return the final device state.

    Raw mode stores quantized samples until the raw buffer is full. Processed
    mode runs the on-board estimator per window and stores one record per
    window until the battery budget runs out.

    Args:
        program: Duty-cycle program
        source: Provider of the samples of each window
        cfg: Device budgets
        estimator: On-board estimator settings (defaults to 1024-sample frames at ``cfg.fs``)
        strict: Raise on raw-capacity overruns instead of filling the buffer and stopping
    """
    report = validate_schedule(program, cfg, strict=strict)
    state = DeviceState(status=DeviceStatus.ACQUIRING)
    log = ContextAdapter(logger, {"mode": program.mode.value})

    if program.mode is RecordMode.PROCESSED:
        base = estimator or EstimatorConfig.onboard(cfg.fs)
        est = base.fitted_to(program.window_seconds)
        if est.frames_per_window < base.frames_per_window:
            log.info(
                f"{program.window_seconds:g} s windows hold {est.frames_per_window} "
                f"frames of {est.frame_samples} samples"
            )

    for start in program.window_starts():
        if program.mode is RecordMode.RAW:
            if not _store_raw(state, program, source, cfg, start):
                state.status = DeviceStatus.FULL
                break
        else:
            stopped = _store_processed(state, program, source, cfg, est, start)
            if stopped is not None:
                state.status = stopped
                break
    else:
        state.status = DeviceStatus.DONE

    log.info(
        f"Schedule ended {state.status.value} after {state.elapsed:g} s: "
        f"{state.record_count} records, {state.flash_used} bytes"
    )
    if cfg.led_on_completion and state.status is DeviceStatus.DONE:
        log.info("Completion LED on")

    return SimulationResult(state=state, report=report, mode=program.mode)
