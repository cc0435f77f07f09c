"""Small shared result type for verification-style operations."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class CheckReport:
    """Outcome of one verification check.

    ``details`` is human-readable; ``data`` carries machine-readable
    expected/observed values for report emission; ``first_failure`` is the
    first index at which an entry-wise check diverged, when that applies.
    """

    name: str
    passed: bool
    details: str = ""
    first_failure: int | None = None
    data: dict[str, Any] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.passed

    def as_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "name": self.name,
            "passed": self.passed,
            "details": self.details,
        }
        if self.first_failure is not None:
            out["first_failure"] = self.first_failure
        if self.data:
            out["data"] = self.data
        return out
