"""Uniform records for verification outcomes."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterable, List

PASS, FAIL, ERROR = "pass", "fail", "error"


@dataclass
class VerificationReport:
    check: str
    params: Dict[str, Any]
    status: str
    expected: List[Any] = field(default_factory=list)
    actual: List[Any] = field(default_factory=list)
    millis: float = 0.0
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self) -> Dict[str, Any]:
        return {
            "check": self.check,
            "params": self.params,
            "status": self.status,
            "expected": self.expected,
            "actual": self.actual,
            "millis": round(self.millis, 3),
        }

    def line(self) -> str:
        params = " ".join(f"{k}={v}" for k, v in self.params.items())
        text = f"{self.status.upper():5} {self.check} {params}"
        if not self.passed:
            text += f" expected={self.expected} actual={self.actual}"
            if self.detail:
                text += f" ({self.detail})"
        return text


def compare(check: str, params: Dict[str, Any], expected: Iterable, actual: Iterable,
            started: float, detail: str = "") -> VerificationReport:
    """Build a report whose status is pass iff both multisets agree."""
    exp = sorted(expected)
    act = sorted(actual)
    return VerificationReport(check, dict(params), PASS if exp == act else FAIL, exp, act,
                              (time.perf_counter() - started) * 1000, detail)


def run_check(check: str, params: Dict[str, Any],
              body: Callable[[], VerificationReport]) -> VerificationReport:
    """Run ``body``; unexpected exceptions become error reports instead of propagating."""
    started = time.perf_counter()
    try:
        return body()
    except Exception as exc:  # noqa: BLE001 - reported, not swallowed
        return VerificationReport(check, dict(params), ERROR, [], [],
                                  (time.perf_counter() - started) * 1000,
                                  f"{type(exc).__name__}: {exc}")


def dump_json(reports: Iterable[VerificationReport], path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump([r.to_dict() for r in reports], fh, indent=2)
