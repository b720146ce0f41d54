"""Machine-readable check reports."""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Callable

SCHEMA = "setlab-report/1"


@dataclass
class Entry:
    check_id: str
    anchor: str
    passed: bool | None  # None: registered but not evaluated
    detail: dict
    runtime_ms: float

    def to_dict(self, timing: bool) -> dict:
        return {
            "check-id": self.check_id,
            "paper-anchor": self.anchor,
            "pass": self.passed,
            "detail": self.detail,
            "runtime-ms": round(self.runtime_ms, 3) if timing else None,
        }


@dataclass
class Report:
    command: str
    params: dict = field(default_factory=dict)
    entries: list = field(default_factory=list)

    def run(self, check_id: str, anchor: str, fn: Callable[[], tuple]) -> Entry:
        """Run ``fn() -> (passed, detail)``; an exception counts as a failure."""
        if any(e.check_id == check_id for e in self.entries):
            raise ValueError(f"check {check_id!r} registered twice")
        t0 = time.perf_counter()
        try:
            passed, detail = fn()
        except Exception as exc:  # a crashing check is a failing check
            passed, detail = False, {"error": f"{type(exc).__name__}: {exc}"}
        entry = Entry(check_id, anchor, passed, _plain(detail), 1000 * (time.perf_counter() - t0))
        self.entries.append(entry)
        return entry

    @property
    def ok(self) -> bool:
        return all(e.passed is not False for e in self.entries)

    def exit_code(self) -> int:
        return 0 if self.ok else 1

    def to_dict(self, timing: bool = False) -> dict:
        entries = sorted(self.entries, key=lambda e: e.check_id)
        return {
            "schema": SCHEMA,
            "command": self.command,
            "params": _plain(self.params),
            "pass": self.ok,
            "checks": [e.to_dict(timing) for e in entries],
        }

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.to_dict(timing), indent=2, sort_keys=True) + "\n"

    def summary(self) -> str:
        lines = []
        for e in sorted(self.entries, key=lambda e: e.check_id):
            mark = {True: "PASS", False: "FAIL", None: "SKIP"}[e.passed]
            lines.append(f"{mark}  {e.check_id:<34} {e.runtime_ms:9.1f} ms  {e.anchor}")
        lines.append(f"{self.command}: {'all checks pass' if self.ok else 'FAILURES'}")
        return "\n".join(lines) + "\n"


def _plain(obj):
    """Convert to JSON-ready builtins (fractions become ``"num/den"``)."""
    from fractions import Fraction

    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, (set, frozenset)):
        return sorted(_plain(v) for v in obj)
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        return float(f"{obj:.6g}")
    if hasattr(obj, "item"):  # numpy scalars
        return _plain(obj.item())
    return str(obj)
