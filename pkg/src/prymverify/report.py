"""Check results shared by every verification suite."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class CheckResult:
    """One verified statement: what was checked, on which inputs, and how it came out."""

    id: str
    passed: bool
    inputs: dict[str, Any] = field(default_factory=dict)
    expected: Any = None
    actual: Any = None
    tolerance: float | None = None
    details: dict[str, Any] = field(default_factory=dict)
    skipped: str | None = None  # reason, when a precondition did not hold

    @property
    def status(self) -> str:
        if self.skipped:
            return "skip"
        return "pass" if self.passed else "fail"

    def __bool__(self) -> bool:
        return self.passed

    def row(self) -> dict[str, Any]:
        return {
            "id": self.id,
            "inputs": _jsonable(self.inputs),
            "expected": _jsonable(self.expected),
            "actual": _jsonable(self.actual),
            "status": self.status,
            "tolerance": self.tolerance,
            **({"reason": self.skipped} if self.skipped else {}),
        }


def _jsonable(value):
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, complex):
        return [repr(value.real), repr(value.imag)]
    if isinstance(value, float):
        return repr(value)
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if hasattr(value, "item"):  # numpy scalar
        return _jsonable(value.item())
    return str(value)
