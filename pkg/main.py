# main.py
# This is the main entry point for the application.

import sys

from src.cli import run

if __name__ == "__main__":
    sys.exit(run(sys.argv[1:]))
