"""Structured checker verdicts."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class PropertyReport:
    """Outcome of a property checker.

    A failing report always carries at least one witness record so that the
    failure can be replayed through the standalone checkers.
    """

    name: str
    holds: bool
    witnesses: tuple = ()
    notes: str = ""

    def __post_init__(self):
        if not self.holds and not self.witnesses:
            raise ValueError(f"failing report {self.name!r} has no witnesses")

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "holds": self.holds,
            "witnesses": list(self.witnesses),
            "notes": self.notes,
        }


@dataclass(frozen=True)
class ContinuityVerdict:
    """Per-element verdict of a continuity checker.

    evidence maps an element label (or "x,y" pair key) to the witnessing
    data or the failing clause for that element.
    """

    notion: str
    holds: bool
    evidence: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"notion": self.notion, "holds": self.holds, "evidence": self.evidence}
