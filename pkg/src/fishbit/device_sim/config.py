# fishbit/device_sim/config.py
from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

from fishbit.constants import MemoryConstants, SensorConstants
from fishbit.errors import ConfigError

if TYPE_CHECKING:
    from fishbit.config.manager import ConfigManager

RAW_SAMPLE_BYTES = 6            # three int16 words
PROCESSED_RECORD_BYTES = 10     # u32 + u16 + u32


@dataclass(frozen=True)
class DeviceConfig:
    flash_bytes: int = MemoryConstants.FLASH_BYTES
    ram_bytes: int = MemoryConstants.RAM_BYTES
    fs: float = SensorConstants.DEFAULT_FS_HZ
    counts_per_g: int = SensorConstants.COUNTS_PER_G
    raw_capacity_seconds: float = MemoryConstants.RAW_CAPACITY_SECONDS
    battery_active_seconds: float = MemoryConstants.BATTERY_ACTIVE_SECONDS
    led_on_completion: bool = True

    max_fs: float = SensorConstants.MAX_FS_HZ
    full_scale_g: float = SensorConstants.FULL_SCALE_G

    def __post_init__(self) -> None:
        if not 0 < self.fs <= self.max_fs:
            raise ConfigError(f"device fs {self.fs} Hz outside (0, {self.max_fs}] Hz")
        if self.battery_active_seconds <= 0:
            raise ConfigError("battery_active_seconds must be positive")
        if self.counts_per_g <= 0:
            raise ConfigError("counts_per_g must be positive")
        if self.full_scale_g * self.counts_per_g > 32767:
            raise ConfigError("full scale does not fit a 16-bit word at this resolution")
        if self.raw_capacity_bytes > self.flash_bytes:
            raise ConfigError(
                f"raw buffer of {self.raw_capacity_bytes} bytes exceeds {self.flash_bytes} bytes of flash"
            )

    @property
    def raw_capacity_samples(self) -> int:
        return int(round(self.raw_capacity_seconds * self.fs))

    @property
    def raw_capacity_bytes(self) -> int:
        return self.raw_capacity_samples * RAW_SAMPLE_BYTES

    @property
    def max_counts(self) -> int:
        return int(round(self.full_scale_g * self.counts_per_g))

    @classmethod
    def from_config(cls, cfg: "ConfigManager") -> "DeviceConfig":
        return cls(
            flash_bytes=int(cfg.get("device", "flash_bytes", MemoryConstants.FLASH_BYTES)),
            ram_bytes=int(cfg.get("device", "ram_bytes", MemoryConstants.RAM_BYTES)),
            fs=float(cfg.get("device", "fs", SensorConstants.DEFAULT_FS_HZ)),
            counts_per_g=int(cfg.get("device", "counts_per_g", SensorConstants.COUNTS_PER_G)),
            raw_capacity_seconds=float(cfg.get("device", "raw_capacity_seconds", 360.0)),
            battery_active_seconds=float(cfg.get("device", "battery_active_seconds", 21600.0)),
            led_on_completion=bool(cfg.get("device", "led_on_completion", True)),

            max_fs=float(cfg.get("device", "max_fs", SensorConstants.MAX_FS_HZ)),
            full_scale_g=float(cfg.get("device", "full_scale_g", SensorConstants.FULL_SCALE_G)),
        )
