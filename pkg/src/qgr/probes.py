"""Colimit probes along increasing chains.

Torsion, qgr-Hom and saturation are colimits over all cut degrees d.
A probe materializes the colimit system along a finite increasing chain
d_1 < d_2 < ... inside a window, records the transition maps, and calls
the system stabilized when the last two transitions are isomorphisms.
It never extrapolates past the window.
"""

from __future__ import annotations

import logging
import time
from collections.abc import Sequence
from dataclasses import dataclass, field
from itertools import pairwise
from typing import Any, cast

from src.algebra.base import AlgebraElement
from src.config.settings import get_settings
from src.gradedmod.generation import min_generators_in_window
from src.gradedmod.hom import HomMap, HomSpace, hom_space
from src.gradedmod.modules import (
    FreeModule,
    ModuleElement,
    ModuleMap,
    ModulePresentation,
    ModuleRelation,
    free_module,
    quotient_by_elements,
)
from src.gradedmod.submodules import kernel_in_window, tail
from src.gradedmod.torsion import (
    ForwardImages,
    TorsionReport,
    torsion_elements,
    torsion_subspace,
)
from src.poset.posets import IndexElement, Poset
from src.poset.window import Window
from src.shared.errors import PosetMembershipError
from src.shared.linalg import EchelonBasis, SparseVector, rank

logger = logging.getLogger(__name__)


@dataclass
class ProbeStep:
    """Value of the colimit system at one chain degree."""

    degree: IndexElement
    dimension: int
    complete: bool = True


@dataclass
class Transition:
    """The map from one step to the next; rank None means it could not be formed."""

    rank: int | None
    iso: bool


@dataclass
class ColimitProbe:
    """A colimit system sampled along a chain.

    Attributes:
        kind: Which colimit (`tau`, `qgr_hom`, `saturation`).
        poset: Poset of the chain, for formatting.
        steps: One value per chain degree.
        transitions: Maps between consecutive steps.
        evidence: Step data for downstream probes (not serialized).
    """

    kind: str
    poset: Poset = field(repr=False, compare=False)
    steps: list[ProbeStep] = field(default_factory=list)
    transitions: list[Transition] = field(default_factory=list)
    evidence: Any = field(default=None, repr=False, compare=False)

    @property
    def chain(self) -> list[IndexElement]:
        """Chain degrees in order."""
        return [s.degree for s in self.steps]

    @property
    def stabilized(self) -> bool:
        """True when the last two transition maps are isomorphisms."""
        return len(self.transitions) >= 2 and all(t.iso for t in self.transitions[-2:])

    @property
    def complete(self) -> bool:
        """True when every step was computed from a presentation complete in the window."""
        return all(s.complete for s in self.steps)

    @property
    def value_dimension(self) -> int | None:
        """Dimension of the terminal value, when stabilized."""
        return self.steps[-1].dimension if self.stabilized and self.steps else None

    def to_dict(self) -> dict[str, Any]:
        """JSON-ready summary."""
        fmt = self.poset.format_element
        return {
            "kind": self.kind,
            "chain": [fmt(s.degree) for s in self.steps],
            "steps": [
                {"degree": fmt(s.degree), "dimension": s.dimension, "complete": s.complete}
                for s in self.steps
            ],
            "transitions": [{"rank": t.rank, "iso": t.iso} for t in self.transitions],
            "stabilized": self.stabilized,
            "value_dimension": self.value_dimension,
            "approximate": not self.complete,
        }


def _check_chain(chain: Sequence[IndexElement], window: Window) -> None:
    poset = window.poset
    for c in chain:
        if not window.contains(c):
            raise PosetMembershipError(
                f"chain degree {poset.format_element(c)} is outside {window.label()}"
            )
    for a, b in pairwise(chain):
        if not poset.lt(a, b):
            raise PosetMembershipError("probe chain must be strictly increasing")


def tau_colimit(
    module: ModulePresentation, chain: Sequence[IndexElement], window: Window
) -> ColimitProbe:
    """Torsion as the colimit of Hom(P_i / P_{i,>d}, M) along a chain.

    The step value at d is { m in M_i : m * A_{ij} = 0 for window j > d },
    and the transitions are inclusions.

    Raises:
        PosetMembershipError: If the chain leaves the window or is not increasing.
    """
    _check_chain(chain, window)
    start = time.perf_counter()
    forwards = {i: ForwardImages(module, i) for i in window.elements}
    probe = ColimitProbe("tau", window.poset)
    values: list[dict[IndexElement, EchelonBasis]] = []
    for c in chain:
        spaces = {
            i: torsion_subspace(module, i, c, window, forward=forwards[i])
            for i in window.elements
        }
        values.append(spaces)
        probe.steps.append(ProbeStep(c, sum(s.rank for s in spaces.values())))
    for before, after in pairwise(probe.steps):
        probe.transitions.append(Transition(before.dimension, before.dimension == after.dimension))
    probe.evidence = values
    logger.info(
        "tau_probed",
        extra={
            "module": module.name,
            "dimensions": [s.dimension for s in probe.steps],
            "stabilized": probe.stabilized,
            "elapsed_ms": (time.perf_counter() - start) * 1000,
        },
    )
    return probe


def tau_cross_check(probe: ColimitProbe, report: TorsionReport) -> bool:
    """True if the terminal tau value equals the window torsion at every degree."""
    terminal: dict[IndexElement, EchelonBasis] = probe.evidence[-1]
    for d in report.window.elements:
        mine = terminal.get(d)
        theirs = report.spaces.get(d)
        mine_rank = mine.rank if mine is not None else 0
        if mine_rank != report.dimension(d):
            return False
        if (
            mine is not None
            and theirs is not None
            and not all(theirs.contains(row) for row in mine.rows())
        ):
            return False
    return True


class TailPresentation:
    """An in-window presentation of the tail M_{>d}.

    Generators are the minimal generators of the tail; relations are the
    minimal generators of the kernel of the evaluation map, both found on
    the window grown by the probe margin. The presentation is complete
    when nothing was found in the margin.
    """

    def __init__(
        self,
        module: ModulePresentation,
        cut: IndexElement,
        window: Window,
        *,
        margin: int | None = None,
    ) -> None:
        grow = get_settings().probe_margin if margin is None else margin
        self.module = module
        self.cut = cut
        self.window = window
        self.outer = window.grow(grow) if window.is_box and grow else window
        algebra = module.algebra
        fmt = algebra.poset.format_element
        report = min_generators_in_window(tail(module, cut, True, self.outer))
        self.generators: list[ModuleElement] = [
            module.element(e.degree, v) for e in report.entries for v in e.representatives
        ]
        degrees = tuple(g.degree for g in self.generators)
        self.free = FreeModule(algebra, degrees)
        columns = tuple(tuple(module.blocks(g.degree, g.vector)) for g in self.generators)
        self.evaluation = ModuleMap(self.free, module.cover, columns)
        kernel = kernel_in_window(self.evaluation, self.outer, target_module=module)
        syzygies = min_generators_in_window(kernel)
        relations = [
            ModuleRelation(e.degree, tuple(kernel.module.blocks(e.degree, v)))
            for e in syzygies.entries
            for v in e.representatives
        ]
        self.presentation = ModulePresentation(
            algebra, degrees, relations, name=f"{module.name}>{fmt(cut)}"
        )
        found = [e.degree for e in report.entries] + [e.degree for e in syzygies.entries]
        self.complete = all(window.contains(d) for d in found)
        self._echelons: dict[IndexElement, EchelonBasis] = {}

    def _echelon(self, e: IndexElement) -> EchelonBasis:
        cached = self._echelons.get(e)
        if cached is not None:
            return cached
        one = self.module.algebra.field.one()
        component = self.module.component(e)
        echelon = EchelonBasis(self.module.algebra.field, track=True)
        for pos in range(self.free.dimension(e)):
            echelon.add(component.reduce(self.evaluation.apply_vector(e, {pos: one})), tag=pos)
        self._echelons[e] = echelon
        return echelon

    def express(self, m: ModuleElement) -> ModuleElement | None:
        """Write an element of the tail over the presentation generators.

        Returns:
            The element of the presentation mapping to m, or None when m is
            outside the window, at or below the cut, or not reached.
        """
        e = m.degree
        if not self.outer.contains(e) or not self.module.algebra.poset.lt(self.cut, e):
            return None
        combo = self._echelon(e).express(self.module.component(e).reduce(m.vector))
        if combo is None:
            return None
        vector: SparseVector = {cast(int, k): x for k, x in combo.items()}
        return self.presentation.element(e, vector)


@dataclass
class HomStep:
    """The tail presentation and Hom space behind one qgr-Hom step."""

    tail: TailPresentation
    space: HomSpace


def torsion_free_quotient(module: ModulePresentation, window: Window) -> ModulePresentation:
    """M / tau_w M, dividing out the window-torsion directions."""
    report = torsion_elements(module, window)
    elements = [module.element(t.degree, t.vector) for t in report.directions]
    if not elements:
        return module
    return quotient_by_elements(module, elements, name=f"{module.name}/tau")


def _restriction(earlier: HomStep, later: HomStep) -> Transition:
    if earlier.space.dimension == 0:
        return Transition(0, later.space.dimension == 0)
    rows: list[SparseVector] = []
    preimages: list[ModuleElement] = []
    for g in later.tail.generators:
        found = earlier.tail.express(g)
        if found is None:
            return Transition(None, False)
        preimages.append(found)
    for phi in earlier.space.basis:
        images = tuple(phi.apply(p) for p in preimages)
        coords = later.space.express(HomMap(later.tail.presentation, phi.target, images))
        if coords is None:
            return Transition(None, False)
        rows.append(coords)
    r = rank(earlier.space.source.algebra.field, rows)
    iso = r == earlier.space.dimension == later.space.dimension
    return Transition(r, iso)


def qgr_hom(
    source: ModulePresentation,
    target: ModulePresentation,
    chain: Sequence[IndexElement],
    window: Window,
    *,
    reduced_target: ModulePresentation | None = None,
    kind: str = "qgr_hom",
) -> ColimitProbe:
    """Hom(M_{>d}, N / tau N) along a chain, with restriction transitions.

    Each step presents M_{>d} in-window, so the values are computed from
    truncated presentations; a step is marked incomplete when generators
    or syzygies were found in the probe margin.

    Args:
        source: M.
        target: N.
        chain: Increasing cut degrees in the window.
        window: The window.
        reduced_target: A precomputed N / tau_w N.
        kind: Label recorded on the probe.

    Raises:
        PosetMembershipError: If the chain leaves the window or is not increasing.
    """
    _check_chain(chain, window)
    start = time.perf_counter()
    quotient = reduced_target if reduced_target is not None else torsion_free_quotient(
        target, window
    )
    probe = ColimitProbe(kind, window.poset)
    steps: list[HomStep] = []
    for c in chain:
        tp = TailPresentation(source, c, window)
        space = hom_space(tp.presentation, quotient)
        steps.append(HomStep(tp, space))
        probe.steps.append(ProbeStep(c, space.dimension, tp.complete))
    for earlier, later in pairwise(steps):
        probe.transitions.append(_restriction(earlier, later))
    probe.evidence = steps
    logger.info(
        "qgr_hom_probed",
        extra={
            "source": source.name,
            "target": target.name,
            "dimensions": [s.dimension for s in probe.steps],
            "stabilized": probe.stabilized,
            "elapsed_ms": (time.perf_counter() - start) * 1000,
        },
    )
    return probe


def saturation_component(
    module: ModulePresentation,
    i: IndexElement,
    chain: Sequence[IndexElement],
    window: Window,
    *,
    reduced_target: ModulePresentation | None = None,
) -> ColimitProbe:
    """The degree-i piece of the saturation: qgr-Hom from P_i into M."""
    fmt = module.algebra.poset.format_element
    free = free_module(module.algebra, [i], name=f"P{fmt(i)}")
    return qgr_hom(
        free, module, chain, window, reduced_target=reduced_target, kind="saturation"
    )


@dataclass
class UnitStep:
    """Rank of M_i -> saturation value at one chain degree."""

    degree: IndexElement
    rank: int | None
    source_dimension: int

    @property
    def injective(self) -> bool:
        """True when the map is injective."""
        return self.rank == self.source_dimension


def saturation_unit(
    module: ModulePresentation,
    i: IndexElement,
    chain: Sequence[IndexElement],
    window: Window,
) -> list[UnitStep]:
    """The canonical map M_i -> Hom(P_{i,>d}, M / tau M) at every chain step.

    An element m of M_i goes to the map sending a tail generator b of P_i
    to m * b.
    """
    probe = saturation_component(module, i, chain, window)
    basis = module.basis(i)
    out: list[UnitStep] = []
    for step in probe.evidence:
        quotient = step.space.target
        rows: list[SparseVector] = []
        formed = True
        for m in basis:
            images = []
            for g in step.tail.generators:
                b = g.module.blocks(g.degree, g.vector)[0]
                images.append(quotient.element(g.degree, quotient.act_vector(i, m.vector, b)))
            coords = step.space.express(HomMap(step.tail.presentation, quotient, tuple(images)))
            if coords is None:
                formed = False
                break
            rows.append(coords)
        r = rank(module.algebra.field, rows) if formed else None
        out.append(UnitStep(step.tail.cut, r, len(basis)))
    logger.info(
        "saturation_unit_probed",
        extra={"module": module.name, "ranks": [u.rank for u in out]},
    )
    return out


def pull_back(
    phi: HomMap,
    a: AlgebraElement,
    source_tail: TailPresentation,
    target_tail: TailPresentation,
) -> HomMap | None:
    """The right action of a in A_{jt} on a saturation value at j.

    phi is a map from the tail of P_j; the result is the map from the tail
    of P_t sending a generator b to phi(a * b).

    Returns:
        The pulled-back map, or None if some a * b is not expressible.
    """
    images: list[ModuleElement] = []
    free_j = source_tail.module
    for g in target_tail.generators:
        b = g.module.blocks(g.degree, g.vector)[0]
        lifted = source_tail.express(free_j.element_from_blocks(g.degree, [a * b]))
        if lifted is None:
            return None
        images.append(phi.apply(lifted))
    return HomMap(target_tail.presentation, phi.target, tuple(images))
