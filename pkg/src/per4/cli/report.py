"""Report documents: a versioned JSON envelope around a list of checks."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

from .. import __version__

SCHEMA_VERSION = 1
STATUSES = ("pass", "fail", "flagged")


@dataclass
class Check:
    name: str
    status: str
    certificate: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"bad status {self.status!r}")


@dataclass
class ReportDocument:
    command: str
    inputs: dict = field(default_factory=dict)
    checks: list[Check] = field(default_factory=list)
    payload: dict = field(default_factory=dict)
    seconds: float = 0.0

    def add(self, name: str, ok: bool, certificate=None, flagged: bool = False) -> Check:
        status = "flagged" if flagged else "pass" if ok else "fail"
        c = Check(name, status, certificate or {})
        self.checks.append(c)
        return c

    @property
    def failed(self) -> list[Check]:
        return [c for c in self.checks if c.status == "fail"]

    def to_json(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "tool": "per4",
            "version": __version__,
            "command": self.command,
            "input": self.inputs,
            "checks": [
                {"name": c.name, "status": c.status, "certificate": c.certificate}
                for c in sorted(self.checks, key=lambda c: c.name)
            ],
            "result": self.payload,
            "timing": {"seconds": round(self.seconds, 3)},
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.start
        return False
