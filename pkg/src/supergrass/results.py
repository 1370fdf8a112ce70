"""Pass/fail results returned by the verification routines."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class CheckReport:
    """Outcome of one verification.

    ``witness`` describes the first failure found (a JSON-ready mapping,
    usually carrying full serialized super-functions); ``checked`` counts
    the identities that were examined.
    """

    name: str
    passed: bool
    checked: int = 0
    witness: dict | None = None
    details: dict[str, Any] = field(default_factory=dict)

    def __bool__(self):
        return self.passed

    def to_json(self) -> dict:
        out = {"name": self.name, "passed": self.passed, "checked": self.checked}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.details:
            out["details"] = self.details
        return out


def mismatch(coordinate: str, expected, actual, **extra) -> dict:
    w = {"coordinate": coordinate, "expected": expected.to_json(), "actual": actual.to_json()}
    w.update(extra)
    return w
