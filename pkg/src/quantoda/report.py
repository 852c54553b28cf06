"""Machine-readable verification reports shared by all check suites."""

from __future__ import annotations

from dataclasses import dataclass, field, asdict
from typing import Any, Optional


@dataclass
class VerificationReport:
    """Outcome of one relation check.

    status is "PASS" or "FAIL"; witness carries the first failing entry /
    sample point when a check fails, residual the worst observed residual
    for numeric checks (None for exact ones).
    """

    suite: str
    n: int
    relation: str
    status: str
    residual: Optional[float] = None
    tolerance: Optional[float] = None
    seed: Optional[int] = None
    witness: Optional[Any] = None

    @property
    def passed(self) -> bool:
        return self.status == "PASS"

    def to_dict(self) -> dict:
        return asdict(self)


def combine(reports) -> str:
    """Overall status line for a list of reports."""
    return "PASS" if all(r.passed for r in reports) else "FAIL"
