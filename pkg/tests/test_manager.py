# tests/test_manager.py

import json
import logging

from src.core.manager import SettingsManager
from src.core.models import Settings
from src.utils.logger import abbreviate, refresh_logger


def test_missing_file_gives_defaults(tmp_path):
    manager = SettingsManager(str(tmp_path / "absent.json"))
    assert manager.settings == Settings()


def test_unknown_fields_are_dropped(tmp_path):
    path = tmp_path / "settings.json"
    path.write_text(json.dumps({"max_dim": 5, "theme": "dark"}), encoding="utf-8")
    manager = SettingsManager(str(path))
    assert manager.settings.max_dim == 5
    assert not hasattr(manager.settings, "theme")


def test_unreadable_file_falls_back(tmp_path):
    path = tmp_path / "settings.json"
    path.write_text("[1, 2", encoding="utf-8")
    assert SettingsManager(str(path)).settings == Settings()


def test_save_and_reload(tmp_path):
    path = tmp_path / "nested" / "settings.json"
    manager = SettingsManager(str(path))
    manager.settings.gauge_series_cap = 4
    manager.settings.log_dir = str(tmp_path / "logs")
    manager.save_settings()
    again = SettingsManager(str(path))
    assert again.settings.gauge_series_cap == 4
    assert again.log_dir == str(tmp_path / "logs")


def test_long_vectors_are_abbreviated():
    text = "value (" + ", ".join(str(i) for i in range(12)) + ")"
    assert abbreviate(text) == "value (0, 1, 2, 3, 4, 5, ... (12 entries))"


def test_short_vectors_are_kept():
    text = "[1, 2, 3, 4, 5, 6, 7, 8]"
    assert abbreviate(text) == text
    assert abbreviate(None) is None


def test_log_file_is_written(tmp_path):
    settings = Settings(enable_logs=True)
    logger = refresh_logger(settings, str(tmp_path), "info")
    assert logger.level == logging.INFO
    logger.info("rank %s", list(range(20)))
    for handler in logger.handlers:
        handler.flush()
    content = (tmp_path / "liederx.log").read_text(encoding="utf-8")
    assert "(20 entries)" in content


def test_bad_level_falls_back_to_warning(tmp_path):
    logger = refresh_logger(Settings(), str(tmp_path), "chatty")
    assert logger.level == logging.WARNING
