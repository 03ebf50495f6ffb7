"""Structured pass/fail reports shared by the verifiers and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

PASS = "pass"
FAIL = "fail"
INFO = "info"


@dataclass
class Section:
    name: str
    status: str
    details: Any = None
    counterexample: Any = None

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"name": self.name, "status": self.status, "details": self.details}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


@dataclass
class Report:
    sections: list[Section] = field(default_factory=list)

    def add(self, name: str, ok: bool, details: Any = None, counterexample: Any = None) -> Section:
        sec = Section(name, PASS if ok else FAIL, details, None if ok else counterexample)
        self.sections.append(sec)
        return sec

    def info(self, name: str, details: Any = None) -> Section:
        sec = Section(name, INFO, details)
        self.sections.append(sec)
        return sec

    def extend(self, other: Report, prefix: str = "") -> None:
        for sec in other.sections:
            self.sections.append(Section(prefix + sec.name, sec.status, sec.details, sec.counterexample))

    @property
    def ok(self) -> bool:
        return all(s.status != FAIL for s in self.sections)

    def failures(self) -> list[Section]:
        return [s for s in self.sections if s.status == FAIL]

    def __getitem__(self, name: str) -> Section:
        for sec in self.sections:
            if sec.name == name:
                return sec
        raise KeyError(name)

    def to_list(self) -> list[dict[str, Any]]:
        return [s.to_dict() for s in self.sections]
