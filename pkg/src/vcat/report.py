"""Structured pass/fail records for law verification.

Every checker in the package appends one record per law instance it
examines.  Failing records always carry a witness string pointing at the
offending data.
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class CheckResult:
    check: str
    subject: str
    passed: bool
    witness: str = ""

    def to_line(self) -> str:
        status = "pass" if self.passed else "FAIL"
        line = f"check={self.check} subject={self.subject} status={status}"
        if self.witness:
            line += f" witness={self.witness!r}"
        return line


@dataclass
class VerificationReport:
    title: str
    results: list = field(default_factory=list)

    def record(self, check: str, subject, passed: bool, witness: str = "") -> bool:
        if not passed and not witness:
            witness = "unspecified failure"
        self.results.append(CheckResult(check, str(subject), bool(passed), witness if not passed else ""))
        return bool(passed)

    def extend(self, other: "VerificationReport") -> None:
        self.results.extend(other.results)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def failures(self):
        return [r for r in self.results if not r.passed]

    def counts(self):
        ok = sum(1 for r in self.results if r.passed)
        return ok, len(self.results) - ok

    def summary(self) -> str:
        ok, bad = self.counts()
        verdict = "PASS" if bad == 0 else "FAIL"
        return f"{self.title}: {verdict} ({ok} passed, {bad} failed)"

    def to_lines(self):
        lines = [r.to_line() for r in self.results]
        lines.append("summary " + self.summary())
        return lines

    def __str__(self) -> str:
        return "\n".join(self.to_lines())
