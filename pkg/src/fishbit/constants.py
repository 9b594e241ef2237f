"""Application-wide constants and hardware figures."""
from __future__ import annotations

# Application metadata
APP_VERSION = "0.3.0"
APP_VENDOR = "fishbit"
APP_NAME = "fishbit"

ENV_HOME = "FISHBIT_HOME"
ENV_CONFIG = "FISHBIT_CONFIG"


class SensorConstants:
    """Accelerometer figures of the operculum logger."""

    FULL_SCALE_G = 8.0
    MAX_FS_HZ = 800.0
    DEFAULT_FS_HZ = 100.0
    COUNTS_PER_G = 1024          # 14-bit samples normalised into 16-bit words


class MemoryConstants:
    """Microcontroller memory and power budget."""

    FLASH_BYTES = 256 * 1024
    RAM_BYTES = 32 * 1024
    RAW_CAPACITY_SECONDS = 360.0       # 6 min of raw data at 100 Hz
    BATTERY_ACTIVE_SECONDS = 6 * 3600.0


class EstimatorConstants:
    """Defaults shared by the exact and on-board estimators."""

    EXACT_FRAME_SECONDS = 10.0
    ONBOARD_FRAME_SECONDS = 10.24       # 1024 samples at 100 Hz
    FRAMES_PER_WINDOW = 12
    BAND_LOW_HZ = 0.5
    BAND_HIGH_HZ = 8.0
    PERCENTILE = 0.25
    WARMUP_SECONDS = 2.0


# =====================================================
# Download log format
# =====================================================
LOG_MAGIC = b"AEFB"
LOG_VERSION = 1

# =====================================================
# CSV schemas (a bump is a breaking change)
# =====================================================
RAW_CSV_SCHEMA = "fishbit-raw/1"
WINDOWS_CSV_SCHEMA = "fishbit-windows/1"
TRUTH_CSV_SCHEMA = "fishbit-truth/1"
O2_CSV_SCHEMA = "fishbit-o2/1"
LONG_CSV_SCHEMA = "fishbit-long/1"

RAW_COLUMNS = ("t_s", "ax_g", "ay_g", "az_g")
WINDOWS_COLUMNS = ("window_start_s", "resp_freq_bps", "activity_g", "mode")
TRUTH_COLUMNS = ("frame_start_s", "breath_freq_hz", "jerk_energy_g")
O2_COLUMNS = ("t_s", "o2_sat_pct")
LONG_COLUMNS = ("speed_bls", "variable", "value", "unit")
