from __future__ import annotations

from typing import Any, Dict

from fishbit.errors import ConfigError

_FILTER_FAMILIES = ("cheby1", "butter")
_LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


def assert_estimator_section(cfg: Dict[str, Any]) -> None:
    est = cfg.get("estimator", {})
    fs = float(est.get("fs", 0))
    low = float(est.get("band_low", 0))
    high = float(est.get("band_high", 0))

    if fs <= 0:
        raise ConfigError(f"estimator.fs must be positive, got {fs}")
    if not 0 < low < high < fs / 2:
        raise ConfigError(
            f"estimator band must satisfy 0 < band_low < band_high < fs/2 "
            f"(got {low}, {high}, fs={fs})"
        )
    if est.get("filter_family") not in _FILTER_FAMILIES:
        raise ConfigError(
            f"estimator.filter_family must be one of {', '.join(_FILTER_FAMILIES)}"
        )
    if int(est.get("frames_per_window", 0)) < 1:
        raise ConfigError("estimator.frames_per_window must be >= 1")
    if not 0 < float(est.get("percentile", 0)) <= 1:
        raise ConfigError("estimator.percentile must be in (0, 1]")


def assert_device_section(cfg: Dict[str, Any]) -> None:
    dev = cfg.get("device", {})
    if float(dev.get("fs", 0)) > float(dev.get("max_fs", 0)):
        raise ConfigError(
            f"device.fs {dev.get('fs')} Hz exceeds the sensor limit of {dev.get('max_fs')} Hz"
        )
    if float(dev.get("battery_active_seconds", 0)) <= 0:
        raise ConfigError("device.battery_active_seconds must be positive")


def assert_logging_section(cfg: Dict[str, Any]) -> None:
    level = str(cfg.get("logging", {}).get("level", "INFO")).upper()
    if level not in _LOG_LEVELS:
        raise ConfigError(f"logging.level must be one of {', '.join(_LOG_LEVELS)}")


def validate_config(cfg: Dict[str, Any]) -> None:
    assert_estimator_section(cfg)
    assert_device_section(cfg)
    assert_logging_section(cfg)
