"""Validation reports shared by all checkers.

Checkers never raise on malformed input; they collect :class:`Violation`
records instead, each tagged with the axiom clause it breaks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class Violation:
    clause: str
    message: str
    witness: tuple = ()

    def __str__(self):
        if self.witness:
            return f"[{self.clause}] {self.message} (witness: {_fmt(self.witness)})"
        return f"[{self.clause}] {self.message}"

    def to_dict(self):
        return {
            "clause": self.clause,
            "message": self.message,
            "witness": [_plain(w) for w in self.witness],
        }


@dataclass
class ValidationReport:
    """Outcome of a checker: a subject name, the clauses inspected and any violations."""

    subject: str
    clauses: tuple[str, ...] = ()
    violations: list[Violation] = field(default_factory=list)
    window: int | None = None
    notes: dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def add(self, clause, message, *witness):
        self.violations.append(Violation(clause, message, tuple(witness)))

    def extend(self, other: "ValidationReport", prefix: str = ""):
        for v in other.violations:
            self.violations.append(Violation(prefix + v.clause, v.message, v.witness))

    def failed(self, clause: str) -> list[Violation]:
        return [v for v in self.violations if v.clause == clause]

    def clause_ok(self, clause: str) -> bool:
        return not self.failed(clause)

    def lines(self) -> list[str]:
        head = f"{self.subject}: {'valid' if self.ok else 'INVALID'}"
        if self.window is not None:
            head += f" (window L={self.window})"
        out = [head]
        for c in self.clauses:
            n = len(self.failed(c))
            out.append(f"  clause {c}: {'pass' if n == 0 else f'FAIL ({n})'}")
        for v in self.violations:
            out.append(f"  {v}")
        return out

    def __str__(self):
        return "\n".join(self.lines())

    def to_dict(self):
        return {
            "subject": self.subject,
            "valid": self.ok,
            "window": self.window,
            "clauses": {c: self.clause_ok(c) for c in self.clauses},
            "violations": [v.to_dict() for v in self.violations],
        }


def _plain(x):
    if isinstance(x, (str, int, float, bool)) or x is None:
        return x
    if isinstance(x, (tuple, list)):
        return [_plain(y) for y in x]
    if isinstance(x, (set, frozenset)):
        return sorted((_plain(y) for y in x), key=str)
    return str(x)


def _fmt(w):
    return ", ".join(
        "{" + ", ".join(sorted(map(str, x))) + "}" if isinstance(x, (set, frozenset)) else str(x)
        for x in w
    )
