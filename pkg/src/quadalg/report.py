"""Shared verification report structure and its JSON/CSV rendering."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Any

SCHEMA_VERSION = "1"


@dataclass
class Check:
    name: str
    status: str  # "pass" | "fail" | "skipped"
    residual_norm: str = "0"
    detail: str = ""

    @classmethod
    def of(cls, name: str, ok: bool, residual="0", detail: str = "") -> "Check":
        if not isinstance(residual, str):
            residual = f"{residual:.6g}"
        return cls(name, "pass" if ok else "fail", "0" if ok and residual in ("0", "0.0") else residual, detail)

    @property
    def passed(self) -> bool:
        return self.status != "fail"

    def to_dict(self) -> dict:
        return {"name": self.name, "status": self.status, "residual_norm": self.residual_norm, "detail": self.detail}


@dataclass
class Report:
    system: str
    object: str
    params: dict[str, Any] = field(default_factory=dict)
    checks: list[Check] = field(default_factory=list)
    command: str | None = None
    seed: int | None = None
    extra: dict[str, Any] = field(default_factory=dict)
    timing: float | None = None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, check: Check) -> Check:
        self.checks.append(check)
        return check

    def extend(self, other: "Report", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.status, c.residual_norm, c.detail))

    def failing(self) -> list[str]:
        return [c.name for c in self.checks if not c.passed]

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        out = {
            "schema_version": SCHEMA_VERSION,
            "system": self.system,
            "object": self.object,
            "command": self.command,
            "params": {k: str(v) for k, v in self.params.items()},
            "checks": [c.to_dict() for c in self.checks],
        }
        if self.seed is not None:
            out["seed"] = self.seed
        out.update(self.extra)
        out["timing"] = self.timing
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False)


def rows_to_csv(header: list[str], rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow(r)
    return buf.getvalue()
