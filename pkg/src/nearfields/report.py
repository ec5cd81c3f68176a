"""Uniform pass/fail reporting for the verifier functions.

Every verifier returns a Report: a list of named checks, each carrying an
optional witness for failures and a free-form detail string. Reports are
JSON-friendly so the command line can emit them verbatim.
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Check:
    name: str
    ok: bool
    witness: object = None
    detail: str = ""


@dataclass
class Report:
    title: str
    checks: list[Check] = field(default_factory=list)
    counts: dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def add(self, name: str, ok: bool, witness: object = None, detail: str = "") -> Check:
        check = Check(name, bool(ok), witness, detail)
        self.checks.append(check)
        return check

    def merge(self, other: "Report", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.ok, c.witness, c.detail))
        for k, v in other.counts.items():
            self.counts[k] = self.counts.get(k, 0) + v

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]

    def first_failure(self) -> Check | None:
        bad = self.failures()
        return bad[0] if bad else None

    def to_json(self) -> dict:
        return {
            "title": self.title,
            "ok": self.ok,
            "counts": dict(sorted(self.counts.items())),
            "checks": [
                {
                    "name": c.name,
                    "ok": c.ok,
                    "witness": None if c.witness is None else str(c.witness),
                    "detail": c.detail,
                }
                for c in self.checks
            ],
        }
