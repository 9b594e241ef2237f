"""Tests for fishbit.config and the file/logging utilities it relies on."""

from __future__ import annotations

import io
import json
import os

import pytest

from fishbit.config import DEFAULT_CONFIG, ConfigManager, load_config, merge_defaults, validate_config
from fishbit.errors import ConfigError
from fishbit.signal_core import EstimatorConfig, EstimatorMode
from fishbit.utils import (
    ContextAdapter,
    FileLock,
    atomic_write_json,
    get_logger,
    log_performance,
    read_json,
    setup_logging,
)
from fishbit.utils.logging import JsonFormatter


def _write(path, data) -> None:
    path.write_text(json.dumps(data), encoding="utf-8")


# ============================
# Layering
# ============================

class TestConfigManager:
    def test_defaults_without_file(self):
        cfg = ConfigManager()
        assert cfg.path is None
        assert cfg.get("estimator", "fs") == 100.0
        assert cfg.get("device", "battery_active_seconds") == 21600.0
        assert cfg.get("synth", "preset") == "sea_bream"

    def test_get_default_for_missing_key(self):
        assert ConfigManager().get("estimator", "nope", 42) == 42

    def test_overrides_apply_over_defaults(self):
        cfg = ConfigManager(overrides={"estimator": {"percentile": 0.5}})
        assert cfg.get("estimator", "percentile") == 0.5
        assert cfg.get("estimator", "frames_per_window") == 12

    def test_file_wins_over_overrides(self, tmp_path):
        path = tmp_path / "cfg.json"
        _write(path, {"synth": {"seed": 9}})
        cfg = ConfigManager(path, {"synth": {"seed": 3, "preset": "sea_bass"}})
        assert cfg.get("synth", "seed") == 9
        assert cfg.get("synth", "preset") == "sea_bass"

    def test_environment_names_the_file(self, tmp_path, monkeypatch):
        path = tmp_path / "env.json"
        _write(path, {"logging": {"level": "DEBUG"}})
        monkeypatch.setenv("FISHBIT_CONFIG", str(path))
        cfg = ConfigManager()
        assert cfg.path == path
        assert cfg.get("logging", "level") == "DEBUG"

    def test_missing_file_rejected(self, tmp_path):
        with pytest.raises(ConfigError, match="not found"):
            ConfigManager(tmp_path / "absent.json")

    def test_invalid_json_rejected(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{", encoding="utf-8")
        with pytest.raises(ConfigError, match="Invalid JSON"):
            ConfigManager(path)

    def test_non_object_root_rejected(self, tmp_path):
        path = tmp_path / "list.json"
        _write(path, [1, 2])
        with pytest.raises(ConfigError):
            ConfigManager(path)

    def test_save_round_trip(self, tmp_path):
        cfg = ConfigManager(overrides={"synth": {"seed": 5}})
        target = cfg.save(tmp_path / "out" / "cfg.json")
        reloaded = ConfigManager(target)
        assert reloaded.data == cfg.data
        assert reloaded.digest() == cfg.digest()

    def test_save_without_path(self):
        with pytest.raises(ValueError):
            ConfigManager().save()

    def test_set_and_section_copy(self):
        cfg = ConfigManager()
        cfg.set("synth", "seed", 11)
        section = cfg.section("synth")
        section["seed"] = 99
        assert cfg.get("synth", "seed") == 11


class TestDigest:
    def test_stable_across_instances(self):
        assert ConfigManager().digest() == ConfigManager().digest()

    def test_insensitive_to_key_order(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        a.write_text('{"synth": {"seed": 1, "preset": "sea_bass"}}', encoding="utf-8")
        b.write_text('{"synth": {"preset": "sea_bass", "seed": 1}}', encoding="utf-8")
        assert ConfigManager(a).digest() == ConfigManager(b).digest()

    def test_changes_with_values(self):
        assert ConfigManager().digest() != ConfigManager(overrides={"synth": {"seed": 1}}).digest()


# ============================
# Merge and validation
# ============================

class TestMergeAndValidate:
    def test_merge_keeps_unrelated_keys(self):
        merged = merge_defaults({"device": {"fs": 50.0}})
        assert merged["device"]["fs"] == 50.0
        assert merged["device"]["flash_bytes"] == DEFAULT_CONFIG["device"]["flash_bytes"]
        assert DEFAULT_CONFIG["device"]["fs"] == 100.0

    def test_load_config_merges_defaults(self, tmp_path):
        path = tmp_path / "cfg.json"
        _write(path, {"respirometry": {"wait_seconds": 15.0}})
        data = load_config(path)
        assert data["respirometry"]["wait_seconds"] == 15.0
        assert data["respirometry"]["flush_seconds"] == 60.0

    def test_defaults_are_valid(self):
        validate_config(merge_defaults({}))

    @pytest.mark.parametrize("overrides", [
        {"estimator": {"fs": 0}},
        {"estimator": {"band_high": 60.0}},
        {"estimator": {"band_low": 9.0}},
        {"estimator": {"filter_family": "bessel"}},
        {"estimator": {"frames_per_window": 0}},
        {"estimator": {"percentile": 1.5}},
        {"device": {"fs": 1600.0}},
        {"device": {"battery_active_seconds": 0}},
        {"logging": {"level": "LOUD"}},
    ])
    def test_invalid_values_rejected(self, overrides):
        with pytest.raises(ConfigError):
            ConfigManager(overrides=overrides)

    def test_estimator_config_from_manager(self):
        cfg = ConfigManager(overrides={"estimator": {"filter_family": "butter", "filter_order": 2}})
        exact = EstimatorConfig.from_config(cfg, EstimatorMode.EXACT)
        onboard = EstimatorConfig.from_config(cfg, EstimatorMode.ONBOARD)
        assert exact.frame_samples == 1000
        assert onboard.frame_samples == 1024
        assert exact.filter_family == "butter"
        assert exact.filter_order == 2


# ============================
# File utilities
# ============================

class TestFileUtils:
    def test_atomic_json_is_sorted_and_reproducible(self, tmp_path):
        path = tmp_path / "nested" / "data.json"
        atomic_write_json(path, {"b": 1, "a": [1, 2]})
        first = path.read_bytes()
        atomic_write_json(path, {"a": [1, 2], "b": 1})
        assert path.read_bytes() == first
        assert read_json(path) == {"a": [1, 2], "b": 1}
        assert not [p for p in path.parent.iterdir() if p.suffix == ".atomic"]

    def test_read_json_default(self, tmp_path):
        assert read_json(tmp_path / "absent.json", default={}) == {}

    def test_lock_is_exclusive_and_released(self, tmp_path):
        lock = FileLock.for_directory(tmp_path)
        with lock:
            assert lock.owner()["pid"] == os.getpid()
            with pytest.raises(TimeoutError, match="held by"):
                with FileLock.for_directory(tmp_path, timeout=0.1):
                    pass
        assert not lock.lock_path.exists()

    @pytest.mark.parametrize("content", ["", "not json", '{"pid": "x"}'])
    def test_unreadable_lock_is_taken_over(self, tmp_path, content):
        lock = FileLock.for_directory(tmp_path, timeout=0.5)
        lock.lock_path.write_text(content, encoding="utf-8")
        with lock:
            assert lock.owner()["pid"] == os.getpid()

    def test_lock_of_dead_process_is_taken_over(self, tmp_path, monkeypatch):
        lock = FileLock.for_directory(tmp_path, timeout=0.5)
        lock.lock_path.write_text(json.dumps({"pid": 424242, "command": "fishbit synth"}), encoding="utf-8")
        monkeypatch.setattr("fishbit.utils.file.lock.psutil.pid_exists", lambda pid: pid == os.getpid())
        with lock:
            assert lock.owner()["pid"] == os.getpid()


# ============================
# Logging
# ============================

class TestLogging:
    def test_console_goes_to_given_stream(self):
        stream = io.StringIO()
        setup_logging(log_level="INFO", stream=stream)
        get_logger("fishbit.tests").info("window processed")
        assert "INFO: window processed" in stream.getvalue()

    def test_json_lines_carry_context(self):
        stream = io.StringIO()
        setup_logging(log_level="DEBUG", json_format=True, stream=stream)
        log = ContextAdapter(get_logger("fishbit.tests"), {"mode": "exact"})
        log.bind(window_start="120").warning("tail dropped")

        entry = json.loads(stream.getvalue().strip().splitlines()[-1])
        assert entry["level"] == "WARNING"
        assert entry["mode"] == "exact"
        assert entry["window_start"] == "120"
        assert entry["message"] == "[mode=exact] [window_start=120] tail dropped"

    def test_file_handler(self, tmp_path):
        setup_logging(tmp_path / "logs", log_level="INFO", stream=io.StringIO())
        get_logger("fishbit.tests").info("to file")
        for handler in get_logger().handlers:
            handler.flush()
        assert "to file" in (tmp_path / "logs" / "fishbit.log").read_text(encoding="utf-8")

    def test_json_formatter_includes_exception(self):
        stream = io.StringIO()
        setup_logging(log_level="INFO", json_format=True, stream=stream)
        try:
            raise ValueError("boom")
        except ValueError:
            get_logger("fishbit.tests").exception("failed")
        entry = json.loads(stream.getvalue().strip().splitlines()[-1])
        assert "ValueError: boom" in entry["exception"]
        assert isinstance(JsonFormatter().fields, dict)

    def test_performance_decorator_reports_failures(self):
        stream = io.StringIO()
        setup_logging(log_level="DEBUG", stream=stream)

        @log_performance()
        def fails():
            raise RuntimeError("nope")

        @log_performance()
        def works():
            return 3

        assert works() == 3
        with pytest.raises(RuntimeError):
            fails()
        text = stream.getvalue()
        assert "works completed in" in text
        assert "fails failed after" in text
