"""The shared finite-generation semi-decision.

A family is swept on the largest window of a nested chain. Equal
generator totals on the top two windows verify it; totals strictly
increasing across the whole chain (at least three windows) are growth
evidence; anything else is window exhaustion.
"""

from __future__ import annotations

import logging
import time
from collections.abc import Sequence

from src.checks.evidence import GenerationEvidence
from src.config.settings import get_settings
from src.gradedmod.generation import generation_profile, min_generators_in_window
from src.gradedmod.submodules import GradedFamily
from src.poset.posets import FiniteExplicitPoset, Step
from src.poset.window import Window
from src.shared.outcome import CheckOutcome
from src.shared.types import InconclusiveReason, Verdict

logger = logging.getLogger(__name__)


def generation_chain(
    window: Window, length: int | None = None, step: Step | None = None
) -> list[Window]:
    """Nested windows starting at `window` and growing outward.

    Box windows grow by `step`. A window covering a whole finite poset is
    repeated, since nothing lies outside it. Any other explicit window
    yields a one-window chain.
    """
    n = length if length is not None else get_settings().generation_chain_length
    if window.is_box:
        return window.growth_chain(n, step)
    poset = window.poset
    if isinstance(poset, FiniteExplicitPoset) and window.size == len(poset.elements):
        return [window] * n
    return [window]


def finite_generation_test(
    family: GradedFamily,
    chain: Sequence[Window],
    *,
    check: str,
    subject: str = "",
) -> CheckOutcome:
    """Decide finite generation of a family as far as the chain allows.

    Args:
        family: Family materialized on the largest chain window.
        chain: Nested windows, smallest first, down-closed in the largest.
        check: Name recorded on the outcome.
        subject: Subject recorded on the outcome.

    Returns:
        Verified with the generators, or Inconclusive with the profile.
    """
    start = time.perf_counter()
    report = min_generators_in_window(family)
    profile = generation_profile(report, chain)
    certificate = {
        "generators": report.to_dict()["generators"],
        "profile": profile,
        "windows": [w.label() for w in chain],
    }
    evidence = GenerationEvidence(family, report, chain, profile)
    reason: InconclusiveReason | None = None
    if len(profile) >= 2 and profile[-1] == profile[-2]:
        verdict = Verdict.VERIFIED
    else:
        verdict = Verdict.INCONCLUSIVE
        increasing = all(a < b for a, b in zip(profile, profile[1:], strict=False))
        if len(profile) >= 3 and increasing:
            reason = InconclusiveReason.GROWTH_EVIDENCE
        else:
            reason = InconclusiveReason.WINDOW_EXHAUSTED
    logger.info(
        "generation_tested",
        extra={
            "check": check,
            "subject": subject,
            "verdict": verdict.value,
            "profile": profile,
            "elapsed_ms": (time.perf_counter() - start) * 1000,
        },
    )
    return CheckOutcome(
        check=check,
        verdict=verdict,
        subject=subject,
        reason=reason,
        window=chain[-1].bounds(),
        certificate=certificate,
        evidence=evidence,
    )
