import logging
import os
import re
from logging.handlers import RotatingFileHandler

# Runs of nine or more comma separated entries inside brackets or parentheses
_LONG_SEQUENCE = re.compile(r"([\(\[])((?:[^\(\)\[\],]+,\s*){8,}[^\(\)\[\],]+)([\)\]])")
MAX_ITEMS = 6


def abbreviate(text):
    if not text or not isinstance(text, str):
        return text

    def shorten(match):
        items = [s.strip() for s in match.group(2).split(",")]
        head = ", ".join(items[:MAX_ITEMS])
        return f"{match.group(1)}{head}, ... ({len(items)} entries){match.group(3)}"

    return _LONG_SEQUENCE.sub(shorten, text)


class AbbreviatingFormatter(logging.Formatter):
    def format(self, record):
        orig_msg, orig_args = record.msg, record.args
        record.msg = abbreviate(record.getMessage())
        record.args = None
        try:
            val = super().format(record)
        finally:
            record.msg, record.args = orig_msg, orig_args
        return val


def setup_logger(name, log_file=None, level=logging.WARNING):
    """Setup a standard logger with rotating file and console output."""
    formatter = AbbreviatingFormatter('%(asctime)s - %(levelname)s - [%(filename)s:%(lineno)d] - %(message)s')

    logger = logging.getLogger(name)
    logger.setLevel(level)

    # Clear existing handlers to avoid duplicates
    if logger.hasHandlers():
        logger.handlers.clear()

    if log_file:
        os.makedirs(os.path.dirname(os.path.abspath(log_file)), exist_ok=True)
        handler = RotatingFileHandler(log_file, maxBytes=10*1024*1024, backupCount=5, encoding="utf-8")
        handler.setFormatter(formatter)
        logger.addHandler(handler)

    # Console output goes to stderr; stdout is reserved for the JSON result
    console_handler = logging.StreamHandler()
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)

    return logger


def refresh_logger(settings, log_dir, level_override=None):
    """Configures the package logger from the current settings."""
    level = logging.getLevelName((level_override or settings.log_level).upper())
    if not isinstance(level, int):
        level = logging.WARNING
    log_file = os.path.join(log_dir, "liederx.log") if settings.enable_logs else None
    return setup_logger("liederx", log_file, level)
