"""Validation reports: a list of violated slots, empty iff the check passed."""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Violation:
    check: str
    slot: tuple
    value: object = None

    def describe(self) -> str:
        slot = ", ".join(str(s) for s in self.slot)
        if self.value is None:
            return f"{self.check}: [{slot}]"
        return f"{self.check}: [{slot}] -> {self.value}"


@dataclass
class Report:
    name: str
    violations: list[Violation] = field(default_factory=list)
    checked: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def add(self, check: str, slot, value=None) -> None:
        self.violations.append(Violation(check, tuple(slot), value))

    def extend(self, other: "Report") -> "Report":
        self.violations.extend(other.violations)
        self.checked += other.checked
        return self

    def __str__(self) -> str:
        head = f"{self.name}: {'ok' if self.ok else 'FAILED'} ({self.checked} slots)"
        return "\n".join([head] + ["  " + v.describe() for v in self.violations])
