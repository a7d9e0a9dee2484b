import json
import logging
import os
import sys
from dataclasses import asdict, fields
from typing import Optional

from .models import Settings
from ..utils.constants import APP_DIR_NAME

logger = logging.getLogger("liederx.manager")


def default_data_dir() -> str:
    if sys.platform == "win32":
        return os.path.join(os.environ.get("APPDATA", ""), APP_DIR_NAME)
    return os.path.join(os.path.expanduser("~"), ".local", "share", APP_DIR_NAME)


class SettingsManager:
    def __init__(self, settings_file: Optional[str] = None):
        self.base_dir = default_data_dir()
        self.settings_file = settings_file or os.path.join(self.base_dir, "settings.json")
        self.settings = Settings()
        self.load_settings()

    @property
    def log_dir(self) -> str:
        return self.settings.log_dir or os.path.join(self.base_dir, "logs")

    def load_settings(self):
        if not os.path.exists(self.settings_file):
            return
        try:
            with open(self.settings_file, "r", encoding="utf-8") as f:
                data = json.load(f)
            valid_fields = {field.name for field in fields(Settings)}
            filtered_data = {k: v for k, v in data.items() if k in valid_fields}
            self.settings = Settings(**filtered_data)
        except (OSError, ValueError, TypeError, AttributeError) as e:
            logger.warning(f"Ignoring unreadable settings file {self.settings_file}: {e}")
            self.settings = Settings()

    def save_settings(self):
        os.makedirs(os.path.dirname(os.path.abspath(self.settings_file)), exist_ok=True)
        with open(self.settings_file, "w", encoding="utf-8") as f:
            json.dump(asdict(self.settings), f, indent=4)
