"""Generator sweeps over windows.

Degrees are processed in the window's linear extension, so a single
pass sees every lower degree before the degree it feeds into. At each
degree the new generators are the directions of the family that the
images of earlier degrees do not reach.
"""

from __future__ import annotations

import logging
import time
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Any

from src.gradedmod.modules import ModuleElement, ModulePresentation, quotient_by_elements
from src.gradedmod.submodules import GradedFamily, SubmoduleInWindow, tail
from src.poset.posets import IndexElement
from src.poset.window import Window
from src.shared.errors import PosetMembershipError
from src.shared.field import FieldSpec
from src.shared.linalg import EchelonBasis, SparseVector

logger = logging.getLogger(__name__)


@dataclass
class GeneratorEntry:
    """New generators found at one degree.

    Attributes:
        degree: The degree.
        count: Number of new generators.
        representatives: One vector per new generator.
        labels: Rendered representatives.
    """

    degree: IndexElement
    count: int
    representatives: list[SparseVector] = field(default_factory=list, repr=False)
    labels: list[str] = field(default_factory=list)


@dataclass
class GeneratorReport:
    """Minimal generators of a family on a window, in sweep order."""

    window: Window
    entries: list[GeneratorEntry] = field(default_factory=list)

    @property
    def total(self) -> int:
        """Total number of generators."""
        return sum(e.count for e in self.entries)

    def counts_in(self, window: Window) -> int:
        """Number of generators at degrees inside a sub-window."""
        return sum(e.count for e in self.entries if window.contains(e.degree))

    def restricted(self, window: Window) -> list[GeneratorEntry]:
        """Entries at degrees inside a sub-window."""
        return [e for e in self.entries if window.contains(e.degree)]

    def to_dict(self) -> dict[str, Any]:
        """JSON-ready summary."""
        poset = self.window.poset
        return {
            "window": self.window.bounds(),
            "total": self.total,
            "generators": [
                {"degree": poset.format_element(e.degree), "count": e.count, "elements": e.labels}
                for e in self.entries
            ],
        }


def min_generators_in_window(family: GradedFamily) -> GeneratorReport:
    """Minimal generators of an action-closed family on its window.

    Args:
        family: The family (a submodule, a kernel, an assembled probe family).

    Returns:
        Per-degree new-generator counts with greedy representatives.
    """
    start = time.perf_counter()
    window = family.window
    pending: dict[IndexElement, EchelonBasis] = {}
    report = GeneratorReport(window)
    for d in window.elements:
        space = family.space(d)
        images = pending.pop(d, None) or EchelonBasis(family.field)
        fresh = [row for row in space.rows() if images.add(row)]
        if fresh:
            report.entries.append(
                GeneratorEntry(d, len(fresh), fresh, [family.describe(d, v) for v in fresh])
            )
        if space.rank == 0:
            continue
        for t, act in family.actions(d):
            if not window.contains(t):
                continue
            target = pending.setdefault(t, EchelonBasis(family.field))
            for row in space.rows():
                target.add(act(row))
    logger.info(
        "generators_swept",
        extra={
            "window": window.label(),
            "total": report.total,
            "elapsed_ms": (time.perf_counter() - start) * 1000,
        },
    )
    return report


def close_family(
    window: Window,
    field_spec: FieldSpec,
    seeds: dict[IndexElement, list[SparseVector]],
    family: GradedFamily,
) -> dict[IndexElement, EchelonBasis]:
    """Smallest action-closed subspaces of a family containing the seeds.

    Args:
        window: Window to close on.
        field_spec: Coefficient field.
        seeds: Seed vectors per degree.
        family: Supplies the generator action.

    Returns:
        Closure subspace per degree (only nonzero degrees).

    Raises:
        PosetMembershipError: If a seed degree lies outside the window.
    """
    for d in seeds:
        if not window.contains(d):
            raise PosetMembershipError(
                f"seed degree {window.poset.format_element(d)} is outside {window.label()}"
            )
    spaces: dict[IndexElement, EchelonBasis] = {}
    pending: dict[IndexElement, EchelonBasis] = {}
    for d in window.elements:
        space = pending.pop(d, None) or EchelonBasis(field_spec)
        for v in seeds.get(d, []):
            space.add(v)
        if space.rank == 0:
            continue
        spaces[d] = space
        for t, act in family.actions(d):
            if not window.contains(t):
                continue
            target = pending.setdefault(t, EchelonBasis(field_spec))
            for row in space.rows():
                target.add(act(row))
    return spaces


def generation_closure(
    module: ModulePresentation, seeds: Sequence[ModuleElement], window: Window
) -> SubmoduleInWindow:
    """The submodule generated by seeds, on a window.

    Raises:
        PosetMembershipError: If a seed degree lies outside the window.
    """
    by_degree: dict[IndexElement, list[SparseVector]] = {}
    for m in seeds:
        by_degree.setdefault(m.degree, []).append(m.vector)
    carrier = SubmoduleInWindow(module, window)
    spaces = close_family(window, module.algebra.field, by_degree, carrier)
    return SubmoduleInWindow(module, window, spaces)


def generation_profile(report: GeneratorReport, chain: Sequence[Window]) -> list[int]:
    """Generator totals restricted to each window of a nested chain.

    The chain windows must be down-closed in the report's window (nested
    boxes with a common lower corner are), so restriction equals a sweep
    on the smaller window.
    """
    return [report.counts_in(w) for w in chain]


def truncation(
    module: ModulePresentation, d: IndexElement, window: Window, *, name: str | None = None
) -> tuple[ModulePresentation, bool]:
    """M / M_{>d}, presented by the in-window generators of the tail.

    Args:
        module: The module.
        d: Cut degree.
        window: Window to find tail generators on; box windows are grown
            by one step to test stability.
        name: Name of the quotient.

    Returns:
        (quotient, stable) where stable says no tail generator appeared
        outside the window when it was grown.
    """
    outer = window.grow(1) if window.is_box else window
    report = min_generators_in_window(tail(module, d, True, outer))
    stable = report.counts_in(window) == report.total
    elements = [
        module.element(e.degree, v) for e in report.entries for v in e.representatives
    ]
    poset = module.algebra.poset
    quotient = quotient_by_elements(
        module, elements, name=name or f"{module.name}/>{poset.format_element(d)}"
    )
    logger.info(
        "truncation_presented",
        extra={"module": module.name, "relations_added": len(elements), "stable": stable},
    )
    return quotient, stable
