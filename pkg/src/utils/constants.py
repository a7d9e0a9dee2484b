# src/utils/constants.py

APP_NAME = "liederx"
APP_VERSION = "1.0.0"
APP_DESCRIPTION = "Exact extensions and derivation extensions of LieDer pairs"
APP_DIR_NAME = "liederx"

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_BAD_INPUT = 2
