# fishbit/cli/io.py
"""
CSV and sidecar files exchanged by the commands.

Every CSV starts with a ``# schema: <name>/<version>`` comment followed by a
header row. Files without the comment are accepted; a different schema tag is
rejected.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from fishbit.analysis import CyclePhases, SpeedStep
from fishbit.constants import (
    LONG_COLUMNS,
    LONG_CSV_SCHEMA,
    O2_COLUMNS,
    O2_CSV_SCHEMA,
    RAW_COLUMNS,
    RAW_CSV_SCHEMA,
    TRUTH_COLUMNS,
    TRUTH_CSV_SCHEMA,
    WINDOWS_COLUMNS,
    WINDOWS_CSV_SCHEMA,
)
from fishbit.errors import ParseError, SchemaMismatch
from fishbit.signal_core import AccelSeries, WindowResult
from fishbit.synth import GroundTruth
from fishbit.utils import atomic_write, atomic_write_json, get_logger

logger = get_logger(__name__)

FLOAT_FORMAT = "%.10g"
SPACING_TOLERANCE_S = 1e-6
SIDECAR_KEYS = ("speed_bls", "temp_c", "salinity_psu", "chamber_volume_l", "fish_mass_kg")


# =====================================================
# Generic CSV
# =====================================================

def write_csv(path: Path, frame: pd.DataFrame, schema: str) -> None:
    body = frame.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    atomic_write(Path(path), f"# schema: {schema}\n{body}")
    logger.debug(f"Wrote {len(frame)} rows to {path}")


def _leading_comments(path: Path) -> Tuple[Optional[str], int]:
    """Schema tag of the first comment line and the number of comment lines."""
    schema = None
    count = 0
    with Path(path).open("r", encoding="utf-8") as f:
        for line in f:
            if not line.startswith("#"):
                break
            if count == 0:
                text = line[1:].strip()
                if text.startswith("schema:"):
                    schema = text.split(":", 1)[1].strip()
            count += 1
    return schema, count


def read_csv(
    path: Path,
    columns: Sequence[str],
    schema: str,
    *,
    text_columns: Iterable[str] = (),
) -> pd.DataFrame:
    """
    Read a fishbit CSV with numeric columns checked row by row.

    Raises:
        ParseError: wrong schema tag, malformed rows or non-numeric cells
            (with the 1-based line number)
        SchemaMismatch: a required column is missing
    """
    path = Path(path)
    found, n_comments = _leading_comments(path)
    if found is not None and found != schema:
        raise ParseError(f"schema '{found}', expected '{schema}'", path=str(path), line=1)

    try:
        frame = pd.read_csv(path, skiprows=n_comments, dtype=str, skip_blank_lines=False)
    except pd.errors.EmptyDataError as e:
        raise ParseError("no header row", path=str(path), line=n_comments + 1) from e
    except pd.errors.ParserError as e:
        raise ParseError(str(e), path=str(path)) from e

    frame.columns = [c.strip() for c in frame.columns]
    for column in columns:
        if column not in frame.columns:
            raise SchemaMismatch(column, path=str(path))

    first_data_line = n_comments + 2
    text_columns = set(text_columns)
    for column in columns:
        if column in text_columns:
            continue
        values = pd.to_numeric(frame[column].str.strip(), errors="coerce")
        bad = np.flatnonzero(values.isna().to_numpy())
        if bad.size:
            row = int(bad[0])
            raise ParseError(
                f"column '{column}' holds {frame[column].iloc[row]!r}, not a number",
                path=str(path),
                line=first_data_line + row,
            )
        frame[column] = values.astype(float)

    return frame[list(columns)]


# =====================================================
# Raw acceleration
# =====================================================

def write_raw_csv(path: Path, series: AccelSeries) -> None:
    frame = pd.DataFrame({
        "t_s": series.times(),
        "ax_g": series.x,
        "ay_g": series.y,
        "az_g": series.z,
    })
    write_csv(path, frame, RAW_CSV_SCHEMA)


def read_raw_csv(path: Path, fs: Optional[float] = None) -> AccelSeries:
    """
    Raw samples as an AccelSeries.

    Timestamps must increase at ``1/fs`` (within 1 µs); without ``fs`` the
    rate is taken from the first interval.

    Raises:
        ParseError: a timestamp off the sampling grid
    """
    frame = read_csv(path, RAW_COLUMNS, RAW_CSV_SCHEMA)
    _, n_comments = _leading_comments(Path(path))
    t = frame["t_s"].to_numpy()
    if t.size == 0:
        raise ParseError("no samples", path=str(path), line=n_comments + 2)

    if fs is None:
        if t.size < 2:
            raise ParseError("cannot infer the sampling rate from one sample", path=str(path))
        fs = 1.0 / (t[1] - t[0]) if t[1] > t[0] else 0.0
        if fs <= 0:
            raise ParseError("timestamps must increase", path=str(path), line=n_comments + 3)
        fs = round(fs, 6)

    off_grid = np.flatnonzero(np.abs(np.diff(t) - 1.0 / fs) > SPACING_TOLERANCE_S)
    if off_grid.size:
        row = int(off_grid[0]) + 1
        raise ParseError(
            f"t_s={t[row]:g} breaks the {1.0 / fs:g} s sampling interval",
            path=str(path),
            line=n_comments + 2 + row,
        )

    data = frame[["ax_g", "ay_g", "az_g"]].to_numpy()
    return AccelSeries(data, fs=float(fs), start_s=float(t[0]))


def write_truth_csv(path: Path, truth: GroundTruth) -> None:
    frame = pd.DataFrame({
        "frame_start_s": truth.frame_start_s,
        "breath_freq_hz": truth.breath_freq_hz,
        "jerk_energy_g": truth.jerk_energy_g,
    })
    write_csv(path, frame, TRUTH_CSV_SCHEMA)


# =====================================================
# Windows
# =====================================================

def write_windows_csv(path: Path, windows: Sequence[WindowResult]) -> None:
    frame = pd.DataFrame(
        [(w.window_start, w.resp_freq, w.activity, w.mode.value) for w in windows],
        columns=list(WINDOWS_COLUMNS),
    )
    write_csv(path, frame, WINDOWS_CSV_SCHEMA)


def read_windows_csv(path: Path) -> pd.DataFrame:
    return read_csv(path, WINDOWS_COLUMNS, WINDOWS_CSV_SCHEMA, text_columns=("mode",))


# =====================================================
# Respirometry steps
# =====================================================

def sidecar_path(csv_path: Path) -> Path:
    return Path(csv_path).with_suffix(".json")


def write_step(path: Path, step: SpeedStep) -> Path:
    """Write the O2 trace and its metadata sidecar; returns the sidecar path."""
    frame = pd.DataFrame({"t_s": step.t_s, "o2_sat_pct": step.o2_sat_pct})
    write_csv(path, frame, O2_CSV_SCHEMA)

    meta = {
        "schema": O2_CSV_SCHEMA,
        "speed_bls": step.speed_bls,
        "temp_c": step.temp_c,
        "salinity_psu": step.salinity_psu,
        "chamber_volume_l": step.chamber_volume_l,
        "fish_mass_kg": step.fish_mass_kg,
        "pressure_kpa": step.pressure_kpa,
    }
    if step.phases is not None:
        meta.update(
            flush_s=step.phases.flush_s,
            wait_s=step.phases.wait_s,
            measure_s=step.phases.measure_s,
        )
    sidecar = sidecar_path(path)
    atomic_write_json(sidecar, meta)
    return sidecar


def read_step(path: Path) -> SpeedStep:
    """
    O2 trace plus sidecar metadata as a SpeedStep.

    Raises:
        SchemaMismatch: missing CSV column or sidecar key
        ParseError: unreadable sidecar
    """
    frame = read_csv(path, O2_COLUMNS, O2_CSV_SCHEMA)
    sidecar = sidecar_path(path)
    try:
        meta = json.loads(sidecar.read_text(encoding="utf-8"))
    except FileNotFoundError as e:
        raise ParseError("metadata sidecar not found", path=str(sidecar)) from e
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, path=str(sidecar), line=e.lineno) from e

    for key in SIDECAR_KEYS:
        if key not in meta:
            raise SchemaMismatch(key, path=str(sidecar))

    phases = None
    if all(k in meta for k in ("flush_s", "wait_s", "measure_s")):
        phases = CyclePhases(float(meta["flush_s"]), float(meta["wait_s"]), float(meta["measure_s"]))

    kwargs = {}
    if "pressure_kpa" in meta:
        kwargs["pressure_kpa"] = float(meta["pressure_kpa"])
    return SpeedStep(
        speed_bls=float(meta["speed_bls"]),
        t_s=frame["t_s"].to_numpy(),
        o2_sat_pct=frame["o2_sat_pct"].to_numpy(),
        temp_c=float(meta["temp_c"]),
        salinity_psu=float(meta["salinity_psu"]),
        chamber_volume_l=float(meta["chamber_volume_l"]),
        fish_mass_kg=float(meta["fish_mass_kg"]),
        phases=phases,
        **kwargs,
    )


# =====================================================
# Plot-ready long format
# =====================================================

def write_long_csv(path: Path, rows: List[Tuple[float, str, float, str]]) -> None:
    write_csv(path, pd.DataFrame(rows, columns=list(LONG_COLUMNS)), LONG_CSV_SCHEMA)
