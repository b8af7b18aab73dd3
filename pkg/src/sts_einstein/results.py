"""Check outcomes and the hard-error exception raised by constructors."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped"


@dataclass
class CheckResult:
    """Outcome of one verification sweep.

    ``witness`` is JSON-ready (ints, strings, lists) and describes the first
    violation in lexicographic index order.  ``violations`` holds every
    violating index tuple when the sweep was asked to enumerate them all.
    """

    name: str
    status: str = PASS
    witness: dict[str, Any] | None = None
    violations: list[tuple[int, ...]] = field(default_factory=list)
    detail: str = ""

    def __bool__(self) -> bool:
        return self.status == PASS

    @property
    def ok(self) -> bool:
        return self.status == PASS

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {"name": self.name, "status": self.status}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.detail:
            out["detail"] = self.detail
        return out


def passed(name: str, detail: str = "") -> CheckResult:
    return CheckResult(name, PASS, detail=detail)


def failed(name: str, witness: dict[str, Any] | None = None, detail: str = "") -> CheckResult:
    return CheckResult(name, FAIL, witness=witness, detail=detail)


class ConstructionError(Exception):
    """A construction step found its own output inconsistent.

    Raised where a mismatch would falsify the construction itself (two routes
    to the same quantity disagreeing, a commutator leaving its span, ...).
    """

    def __init__(self, message: str, witness: dict[str, Any] | None = None):
        super().__init__(message)
        self.witness = witness
