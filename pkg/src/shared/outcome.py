"""CheckOutcome: the result value of every finiteness checker.

Refuted and Inconclusive are ordinary data. An outcome may carry typed
evidence for the replay validator; evidence never reaches the JSON
report, only the `certificate` payload does.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from src.shared.types import InconclusiveReason, Verdict

_SEVERITY = {
    Verdict.VERIFIED: 0,
    Verdict.VERIFIED_BY_CRITERION: 1,
    Verdict.INCONCLUSIVE: 2,
    Verdict.REFUTED: 3,
}


@dataclass
class CheckOutcome:
    """Verdict of one check, optionally aggregating sub-checks.

    Attributes:
        check: Name of the check that produced the outcome.
        verdict: Verified, VerifiedByCriterion, Refuted or Inconclusive.
        subject: What was checked (`i=(0,0)`, `pair=(0,0),(1,1)`).
        reason: Why an Inconclusive outcome stopped.
        criterion: Criterion label for VerifiedByCriterion.
        window: Window bounds used, formatted.
        certificate: JSON-ready payload a validator can re-check.
        items: Per-index or per-pair sub-outcomes.
        evidence: Typed replay data (excluded from reports).
    """

    check: str
    verdict: Verdict
    subject: str = ""
    reason: InconclusiveReason | None = None
    criterion: str | None = None
    window: list[str] | None = None
    certificate: dict[str, Any] = field(default_factory=dict)
    items: list[CheckOutcome] = field(default_factory=list)
    evidence: Any = field(default=None, repr=False, compare=False)

    @property
    def passed(self) -> bool:
        """True for Verified and VerifiedByCriterion."""
        return self.verdict in (Verdict.VERIFIED, Verdict.VERIFIED_BY_CRITERION)

    def walk(self) -> list[CheckOutcome]:
        """Return this outcome and every nested item, depth first."""
        out = [self]
        for item in self.items:
            out.extend(item.walk())
        return out

    def to_dict(self) -> dict[str, Any]:
        """Serialize to plain JSON types (evidence dropped)."""
        data: dict[str, Any] = {"check": self.check, "verdict": self.verdict.value}
        if self.subject:
            data["subject"] = self.subject
        if self.reason is not None:
            data["reason"] = self.reason.value
        if self.criterion is not None:
            data["criterion"] = self.criterion
        if self.window is not None:
            data["window"] = list(self.window)
        if self.certificate:
            data["certificate"] = self.certificate
        if self.items:
            data["items"] = [item.to_dict() for item in self.items]
        return data


def aggregate(
    check: str,
    items: list[CheckOutcome],
    *,
    subject: str = "",
    window: list[str] | None = None,
) -> CheckOutcome:
    """Combine sub-outcomes: refuted > inconclusive > by-criterion > verified.

    An empty item list is vacuously Verified.

    Args:
        check: Name of the aggregate check.
        items: Sub-outcomes in input order.
        subject: Optional subject label.
        window: Window bounds, formatted.

    Returns:
        Aggregate outcome holding the items.
    """
    verdict = Verdict.VERIFIED
    reason: InconclusiveReason | None = None
    criterion: str | None = None
    for item in items:
        if _SEVERITY[item.verdict] > _SEVERITY[verdict]:
            verdict = item.verdict
            reason = item.reason
            criterion = item.criterion
    return CheckOutcome(
        check=check,
        verdict=verdict,
        subject=subject,
        reason=reason if verdict == Verdict.INCONCLUSIVE else None,
        criterion=criterion if verdict == Verdict.VERIFIED_BY_CRITERION else None,
        window=window,
        items=items,
    )
