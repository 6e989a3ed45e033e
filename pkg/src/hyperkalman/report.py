"""Verification reports: a list of checked axioms plus witnessed violations."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: tuple = ()
    detail: str = ""

    def render(self, labels: Optional[Sequence[str]] = None) -> str:
        if labels is not None:
            wit = ", ".join(labels[w] if isinstance(w, int) else str(w) for w in self.witness)
        else:
            wit = ", ".join(str(w) for w in self.witness)
        text = f"{self.axiom} fails at ({wit})"
        return f"{text}: {self.detail}" if self.detail else text


@dataclass
class Report:
    """Outcome of a verifier. ``ok`` iff no violation was recorded.

    Each axiom contributes at most one violation (its first witness in
    index order), so a report lists every violated axiom exactly once.
    """

    subject: str
    checked: list[str] = field(default_factory=list)
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def check(self, axiom: str) -> None:
        if axiom not in self.checked:
            self.checked.append(axiom)

    def fail(self, axiom: str, witness: tuple = (), detail: str = "") -> None:
        self.check(axiom)
        if self.failed(axiom) is None:
            self.violations.append(Violation(axiom, tuple(witness), detail))

    def failed(self, axiom: str) -> Optional[Violation]:
        for v in self.violations:
            if v.axiom == axiom:
                return v
        return None

    def extend(self, other: "Report") -> "Report":
        for a in other.checked:
            self.check(a)
        for v in other.violations:
            if self.failed(v.axiom) is None:
                self.violations.append(v)
        return self

    def to_dict(self, labels: Optional[Sequence[str]] = None) -> dict:
        def wit(w):
            return [labels[x] if labels is not None and isinstance(x, int) else x for x in w]

        return {
            "subject": self.subject,
            "ok": self.ok,
            "checked": list(self.checked),
            "violations": [
                {"axiom": v.axiom, "witness": wit(v.witness), "detail": v.detail}
                for v in self.violations
            ],
        }

    def render(self, labels: Optional[Sequence[str]] = None) -> str:
        lines = [f"{self.subject}: {'PASS' if self.ok else 'FAIL'}"]
        for axiom in self.checked:
            v = self.failed(axiom)
            lines.append(f"  {axiom:<8} {'ok' if v is None else 'FAIL  ' + v.render(labels)}")
        return "\n".join(lines)
