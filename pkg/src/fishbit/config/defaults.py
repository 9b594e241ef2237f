# fishbit/config/defaults.py
from typing import Any, Dict

DEFAULT_CONFIG: Dict[str, Any] = {
    "meta": {
        "version": 1
    },
    "estimator": {
        "fs": 100.0,
        "frames_per_window": 12,
        "band_low": 0.5,
        "band_high": 8.0,
        "percentile": 0.25,
        "warmup_seconds": 2.0,

        # Filter realization
        "filter_family": "cheby1",   # "cheby1" | "butter"
        "filter_order": 3,
        "filter_ripple_db": 1.0,
        "filter_z": True,
        "filter_xy": False,

        # Frame length per mode
        "exact_frame_seconds": 10.0,
        "onboard_frame_seconds": 10.24,
    },
    "device": {
        "flash_bytes": 262144,
        "ram_bytes": 32768,
        "fs": 100.0,
        "counts_per_g": 1024,
        "raw_capacity_seconds": 360.0,
        "battery_active_seconds": 21600.0,
        "led_on_completion": True,
        "max_fs": 800.0,
        "full_scale_g": 8.0,
    },
    "synth": {
        "preset": "sea_bream",
        "seed": 0,
        "duration_seconds": 1476.0,
        "step_seconds": 614.4,
        "speeds": [1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0, 4.5, 5.0, 5.5, 6.0],
    },
    "respirometry": {
        "flush_seconds": 60.0,
        "wait_seconds": 30.0,
        "measure_seconds": 210.0,
        "min_samples": 30,
    },
    "logging": {
        "level": "INFO",
        "json": False,
        "file": False,
    },
}
