"""The chi_1 probe: finite generation of saturation tails.

The saturation values at every window index j > d are assembled into a
graded family whose action is pull-back along algebra generators, and
the family goes through the ordinary finite-generation test. Saturation
values are lower bounds, so the probe never refutes.
"""

from __future__ import annotations

import logging
import time
from collections.abc import Sequence
from functools import partial

from src.algebra.base import AlgebraElement
from src.checks.generation import finite_generation_test
from src.config.settings import get_settings
from src.gradedmod.modules import ModulePresentation
from src.gradedmod.submodules import Action
from src.poset.posets import IndexElement
from src.poset.window import Window
from src.qgr.probes import HomStep, pull_back, saturation_component, torsion_free_quotient
from src.shared.field import FieldSpec
from src.shared.linalg import EchelonBasis, SparseVector, unit_vector
from src.shared.outcome import CheckOutcome
from src.shared.types import InconclusiveReason, Verdict

logger = logging.getLogger(__name__)


class _PullBackFailed(Exception):
    """A pulled-back map could not be expressed in the target Hom space."""


class SaturationFamily:
    """Terminal saturation values at indices above a cut, with pull-back action."""

    def __init__(
        self, module: ModulePresentation, window: Window, steps: dict[IndexElement, HomStep]
    ) -> None:
        self.module = module
        self._window = window
        self.steps = steps

    @property
    def window(self) -> Window:
        """Window the family lives on."""
        return self._window

    @property
    def field(self) -> FieldSpec:
        """Coefficient field."""
        return self.module.algebra.field

    def space(self, d: IndexElement) -> EchelonBasis:
        """The whole saturation value at d, in Hom-basis coordinates."""
        space = EchelonBasis(self.field)
        step = self.steps.get(d)
        if step is not None:
            for k in range(step.space.dimension):
                space.add(unit_vector(self.field, k))
        return space

    def actions(self, d: IndexElement) -> list[tuple[IndexElement, Action]]:
        """Pull-back along each generator of the maximal ideal leaving d."""
        if d not in self.steps:
            return []
        return [
            (a.target, partial(self._act, d, a))
            for a in self.module.algebra.generator_targets(d)
            if a.target in self.steps
        ]

    def _act(self, d: IndexElement, a: AlgebraElement, v: SparseVector) -> SparseVector:
        source, target = self.steps[d], self.steps[a.target]
        pulled = pull_back(source.space.combination(v), a, source.tail, target.tail)
        if pulled is None:
            raise _PullBackFailed(f"pull-back to {self.window.poset.format_element(a.target)}")
        coords = target.space.express(pulled)
        if coords is None:
            raise _PullBackFailed("pulled-back map is outside the Hom space")
        return coords

    def describe(self, d: IndexElement, v: SparseVector) -> str:
        """Render a saturation value as a map."""
        return self.steps[d].space.combination(v).format()


def _unstable(subject: str, window: Window, certificate: dict[str, object]) -> CheckOutcome:
    return CheckOutcome(
        check="chi1",
        verdict=Verdict.INCONCLUSIVE,
        subject=subject,
        reason=InconclusiveReason.PROBE_UNSTABLE,
        window=window.bounds(),
        certificate=certificate,
    )


def chi1_probe(
    module: ModulePresentation,
    d: IndexElement,
    chain: Sequence[IndexElement],
    window: Window,
    *,
    length: int | None = None,
) -> CheckOutcome:
    """Probe finite generation of the saturation tail above d.

    Args:
        module: M.
        d: Cut degree.
        chain: Increasing cut chain for the saturation probes.
        window: The window; generation windows shrink from it.
        length: Number of nested generation windows.

    Returns:
        Verified or Inconclusive; never Refuted.
    """
    start = time.perf_counter()
    fmt = module.algebra.poset.format_element
    subject = f"{module.name}>{fmt(d)}"
    quotient = torsion_free_quotient(module, window)
    steps: dict[IndexElement, HomStep] = {}
    for j in window.strict_upper_set(d):
        probe = saturation_component(module, j, chain, window, reduced_target=quotient)
        if not probe.stabilized:
            return _unstable(
                subject,
                window,
                {"index": fmt(j), "dimensions": [s.dimension for s in probe.steps]},
            )
        steps[j] = probe.evidence[-1]
    n = length if length is not None else get_settings().generation_chain_length
    nested = window.shrink_chain(n) if window.is_box else [window]
    family = SaturationFamily(module, window, steps)
    try:
        outcome = finite_generation_test(family, nested, check="chi1", subject=subject)
    except _PullBackFailed as exc:
        return _unstable(subject, window, {"failure": str(exc)})
    logger.info(
        "chi1_probed",
        extra={
            "module": module.name,
            "cut": fmt(d),
            "verdict": outcome.verdict.value,
            "elapsed_ms": (time.perf_counter() - start) * 1000,
        },
    )
    return outcome
