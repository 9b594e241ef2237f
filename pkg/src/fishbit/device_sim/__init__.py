"""Stand-alone logger simulator: budgets, schedules and the download format."""

from __future__ import annotations

from fishbit.device_sim.codec import HEADER_BYTES, DecodedLog, decode_log, encode_log
from fishbit.device_sim.config import PROCESSED_RECORD_BYTES, RAW_SAMPLE_BYTES, DeviceConfig
from fishbit.device_sim.records import (
    LogRecord,
    ProcessedRecord,
    RawRecord,
    dequantize_record,
    quantize_counts,
    quantize_series,
    quantize_window,
    records_to_series,
)
from fishbit.device_sim.schedule import (
    SCHEDULE_PRESETS,
    RecordMode,
    ScheduleProgram,
    ScheduleReport,
    get_schedule,
    validate_schedule,
)
from fishbit.device_sim.simulator import DeviceState, DeviceStatus, SimulationResult, run_schedule
from fishbit.device_sim.sources import AccelSource, SeriesSource

__all__ = [
    "DeviceConfig",
    "RAW_SAMPLE_BYTES",
    "PROCESSED_RECORD_BYTES",

    "RecordMode",
    "ScheduleProgram",
    "ScheduleReport",
    "SCHEDULE_PRESETS",
    "get_schedule",
    "validate_schedule",

    "LogRecord",
    "RawRecord",
    "ProcessedRecord",
    "quantize_window",
    "dequantize_record",
    "quantize_counts",
    "quantize_series",
    "records_to_series",

    "HEADER_BYTES",
    "DecodedLog",
    "encode_log",
    "decode_log",

    "AccelSource",
    "SeriesSource",

    "DeviceState",
    "DeviceStatus",
    "SimulationResult",
    "run_schedule",
]
