# src/core/models.py
# Shared enums and plain records for the application.

from enum import Enum
from dataclasses import dataclass
from typing import Optional


class ComplexKind(Enum):
    CE = "ce"
    LIEDER = "lieder"


class Target(Enum):
    """Which summand of g ⊕ h a bigraded cochain takes values in."""
    G = "g"
    H = "h"


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    failure: Optional[str] = None

    def __bool__(self):
        return self.ok

    @classmethod
    def passed(cls) -> "CheckResult":
        return cls(True)

    @classmethod
    def failed(cls, failure: str) -> "CheckResult":
        return cls(False, failure)


@dataclass
class Settings:
    log_level: str = "WARNING"
    enable_logs: bool = False
    log_dir: Optional[str] = None
    validate_inputs: bool = True
    json_indent: int = 2
    gauge_series_cap: int = 16
    max_dim: int = 8
