"""Verdict objects returned by every identity check."""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Counterexample:
    description: str
    expected: str
    actual: str

    def as_dict(self) -> dict:
        return {"input": self.description, "expected": self.expected, "actual": self.actual}


@dataclass
class Report:
    """Outcome of an exhaustive check.

    Only the first ``max_counterexamples`` failures (in the canonical iteration
    order of the check) are kept; ``failure_count`` counts all of them.
    """

    command: str
    max_counterexamples: int = 10
    checked_count: int = 0
    failure_count: int = 0
    counterexamples: list[Counterexample] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.failure_count == 0

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def tick(self, n: int = 1) -> None:
        self.checked_count += n

    def fail(self, description: str, expected, actual) -> None:
        self.failure_count += 1
        if len(self.counterexamples) < self.max_counterexamples:
            self.counterexamples.append(Counterexample(description, str(expected), str(actual)))

    def check(self, description: str, expected, actual) -> bool:
        self.tick()
        if expected != actual:
            self.fail(description, expected, actual)
            return False
        return True

    def merge(self, other: "Report") -> "Report":
        self.checked_count += other.checked_count
        for ce in other.counterexamples:
            if len(self.counterexamples) < self.max_counterexamples:
                self.counterexamples.append(ce)
        self.failure_count += other.failure_count
        return self

    def summary(self) -> str:
        lines = [f"{self.command}: {self.verdict} ({self.checked_count} checks, "
                 f"{self.failure_count} failures)"]
        for ce in self.counterexamples:
            lines.append(f"  {ce.description}: expected {ce.expected}, got {ce.actual}")
        if self.failure_count > len(self.counterexamples):
            lines.append(f"  ... {self.failure_count - len(self.counterexamples)} more")
        return "\n".join(lines)
