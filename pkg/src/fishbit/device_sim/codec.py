# fishbit/device_sim/codec.py
"""
Download log format.

Little-endian throughout::

    header  magic "AEFB" | version u8 | mode u8 | fs u16 | counts_per_g u16 | record_count u32
    raw        ax i16 | ay i16 | az i16
    processed  window_start_s u32 | resp_centihz u16 | activity_micro_g u32

``window_start_s`` holds whole seconds only: a 122.88 s cadence is stored as
0, 123, 246, 369, ... and the fractional part is lost.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from typing import Sequence, Tuple

from fishbit.constants import LOG_MAGIC, LOG_VERSION, SensorConstants
from fishbit.device_sim.config import DeviceConfig
from fishbit.device_sim.records import LogRecord, ProcessedRecord, RawRecord
from fishbit.device_sim.schedule import RecordMode
from fishbit.errors import (
    BadMagic,
    CorruptRecord,
    MixedModes,
    OutOfRange,
    TruncatedHeader,
    UnsupportedVersion,
)
from fishbit.utils import get_logger

logger = get_logger(__name__)

HEADER = struct.Struct("<4sBBHHI")
RAW = struct.Struct("<hhh")
PROCESSED = struct.Struct("<IHI")

HEADER_BYTES = HEADER.size

_RECORD_TYPES = {RecordMode.RAW: (RawRecord, RAW), RecordMode.PROCESSED: (ProcessedRecord, PROCESSED)}
_MODE_BY_CODE = {mode.code: mode for mode in RecordMode}


@dataclass(frozen=True)
class DecodedLog:
    records: Tuple[LogRecord, ...]
    mode: RecordMode
    fs: int
    counts_per_g: int
    declared_count: int
    truncated: bool = False


def encode_log(records: Sequence[LogRecord], mode: RecordMode | str, cfg: DeviceConfig) -> bytes:
    """
    Serialize a homogeneous record list behind a 14-byte header.

    Raises:
        MixedModes: a record does not belong to ``mode``
        OutOfRange: header fields or raw counts that the format cannot hold
    """
    mode = RecordMode(mode)
    record_type, layout = _RECORD_TYPES[mode]

    fs = int(round(cfg.fs))
    if abs(fs - cfg.fs) > 1e-9 or not 0 < fs <= 0xFFFF:
        raise OutOfRange(f"fs {cfg.fs} Hz is not a u16 integer")
    if not 0 < cfg.counts_per_g <= 0xFFFF:
        raise OutOfRange(f"counts_per_g {cfg.counts_per_g} does not fit u16")

    chunks = [HEADER.pack(LOG_MAGIC, LOG_VERSION, mode.code, fs, cfg.counts_per_g, len(records))]
    limit = cfg.max_counts
    for index, record in enumerate(records):
        if not isinstance(record, record_type):
            raise MixedModes(f"record {index} is not a {mode.value} record")
        if mode is RecordMode.RAW:
            if max(abs(record.ax_counts), abs(record.ay_counts), abs(record.az_counts)) > limit:
                raise OutOfRange(f"record {index} beyond ±{limit} counts")
            chunks.append(RAW.pack(record.ax_counts, record.ay_counts, record.az_counts))
        else:
            chunks.append(PROCESSED.pack(record.window_start_s, record.resp_centihz, record.activity_micro_g))

    return b"".join(chunks)


def _unpack_record(mode: RecordMode, values: tuple, limit: int, index: int) -> LogRecord:
    if mode is RecordMode.RAW:
        if max(abs(v) for v in values) > limit:
            raise CorruptRecord(f"record {index}: counts beyond ±{limit}")
        return RawRecord(*values)
    try:
        return ProcessedRecord(*values)
    except OutOfRange as e:
        raise CorruptRecord(f"record {index}: {e}") from e


def decode_log(data: bytes) -> DecodedLog:
    """
    Parse a download; inverse of :func:`encode_log`.

    A stream cut inside the records yields every complete record with
    ``truncated=True``. Bytes beyond the declared record count are corrupt.
    """
    data = bytes(data)
    if len(data) < HEADER_BYTES:
        if len(data) >= 4 and data[:4] != LOG_MAGIC:
            raise BadMagic(f"bad magic {data[:4]!r}")
        raise TruncatedHeader(f"{len(data)} bytes; header needs {HEADER_BYTES}")

    magic, version, mode_code, fs, counts_per_g, declared = HEADER.unpack_from(data)
    if magic != LOG_MAGIC:
        raise BadMagic(f"bad magic {magic!r}")
    if version != LOG_VERSION:
        raise UnsupportedVersion(f"log version {version}; supported {LOG_VERSION}")
    if mode_code not in _MODE_BY_CODE:
        raise CorruptRecord(f"unknown record mode {mode_code}")

    mode = _MODE_BY_CODE[mode_code]
    _, layout = _RECORD_TYPES[mode]
    payload = memoryview(data)[HEADER_BYTES:]

    complete = len(payload) // layout.size
    if complete > declared or (complete == declared and len(payload) % layout.size):
        raise CorruptRecord(
            f"{len(payload)} payload bytes exceed {declared} declared {mode.value} records"
        )

    limit = int(round(SensorConstants.FULL_SCALE_G * counts_per_g))
    body = payload[: complete * layout.size]
    records = tuple(
        _unpack_record(mode, values, limit, i)
        for i, values in enumerate(layout.iter_unpack(body))
    )

    truncated = complete < declared
    if truncated:
        logger.warning(f"Log truncated: {complete} of {declared} records recovered")

    return DecodedLog(
        records=records,
        mode=mode,
        fs=fs,
        counts_per_g=counts_per_g,
        declared_count=declared,
        truncated=truncated,
    )
