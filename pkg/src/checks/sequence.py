"""Windowed verification of the sequence conditions on sample modules.

(A) strict tails M_{>d} are finitely generated, by elements above d.
(C) weak tails M_{>=d} are finitely generated.
(P) for sampled surjections f: X -> Y, the map Hom(P_i, X) -> Hom(P_i, Y)
    on saturation probe values is onto for every window index i above a
    reported bound d_f. Sampled maps that are not onto in the window are
    reported and skipped.
"""

from __future__ import annotations

import logging
import time
from collections.abc import Sequence
from dataclasses import dataclass

from src.algebra.base import IndexedAlgebra
from src.checks.generation import finite_generation_test, generation_chain
from src.checks.pool import run_items
from src.config.settings import get_settings
from src.gradedmod.hom import HomMap
from src.gradedmod.modules import ModulePresentation, free_module
from src.gradedmod.submodules import tail
from src.poset.posets import IndexElement, Step
from src.poset.window import Window
from src.qgr.probes import (
    ColimitProbe,
    HomStep,
    saturation_component,
    torsion_free_quotient,
)
from src.shared.linalg import EchelonBasis, SparseVector, rank
from src.shared.outcome import CheckOutcome, aggregate
from src.shared.types import InconclusiveReason, SequenceCondition, Verdict

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SampledSurjection:
    """A module map sampled for (P).

    Attributes:
        label: Name used in reports.
        map: f: X -> Y.
    """

    label: str
    map: HomMap


def sampled_surjections(module: ModulePresentation, window: Window) -> list[SampledSurjection]:
    """The cover F -> M of a sample and, when M has window torsion, M -> M / tau_w M."""
    algebra = module.algebra
    gens = range(len(module.generators))
    cover = free_module(algebra, module.generators, name=f"F{module.name}")
    out = [
        SampledSurjection(
            f"{module.name}:cover",
            HomMap(cover, module, tuple(module.generator(k) for k in gens)),
        )
    ]
    quotient = torsion_free_quotient(module, window)
    if quotient is not module:
        out.append(
            SampledSurjection(
                f"{module.name}:tau",
                HomMap(module, quotient, tuple(quotient.generator(k) for k in gens)),
            )
        )
    return out


def missed_degrees(f: HomMap, window: Window) -> dict[str, int]:
    """Window degrees where f is not onto, with the cokernel dimension there."""
    field = f.target.algebra.field
    fmt = window.poset.format_element
    out: dict[str, int] = {}
    for j in window.elements:
        image = EchelonBasis(field)
        for b in f.source.basis(j):
            image.add(f.apply(b).vector)
        gap = f.target.dimension(j) - image.rank
        if gap:
            out[fmt(j)] = gap
    return out


class _Saturations:
    """Saturation probes per (module, index), shared by every sampled map."""

    def __init__(self, chain: Sequence[IndexElement], window: Window) -> None:
        self.chain = list(chain)
        self.window = window
        self._quotients: dict[int, ModulePresentation] = {}
        self._probes: dict[tuple[int, IndexElement], ColimitProbe] = {}

    def probe(self, module: ModulePresentation, i: IndexElement) -> ColimitProbe:
        key = (id(module), i)
        found = self._probes.get(key)
        if found is not None:
            return found
        quotient = self._quotients.get(id(module))
        if quotient is None:
            quotient = torsion_free_quotient(module, self.window)
            self._quotients[id(module)] = quotient
        probe = saturation_component(
            module, i, self.chain, self.window, reduced_target=quotient
        )
        self._probes[key] = probe
        return probe


def _pushforward_cokernel(f: HomMap, i: IndexElement, saturations: _Saturations) -> int | None:
    """dim coker of Hom(P_i, X) -> Hom(P_i, Y) on terminal probe values; None if unstable."""
    source_probe = saturations.probe(f.source, i)
    target_probe = saturations.probe(f.target, i)
    if not (source_probe.stabilized and target_probe.stabilized):
        return None
    source_step: HomStep = source_probe.evidence[-1]
    target_step: HomStep = target_probe.evidence[-1]
    reduced = target_step.space.target
    rows: list[SparseVector] = []
    for phi in source_step.space.basis:
        images = []
        for image in phi.images:
            pushed = f.apply(f.source.element(image.degree, image.vector))
            images.append(reduced.element(pushed.degree, pushed.vector))
        coords = target_step.space.express(
            HomMap(target_step.tail.presentation, reduced, tuple(images))
        )
        if coords is None:
            return None
        rows.append(coords)
    return target_step.space.dimension - rank(f.target.algebra.field, rows)


def _projective_item(
    sample: SampledSurjection, window: Window, saturations: _Saturations
) -> CheckOutcome:
    """Smallest non-maximal d with a vanishing pushforward cokernel above d."""
    fmt = window.poset.format_element
    cokernel = {i: _pushforward_cokernel(sample.map, i, saturations) for i in window.elements}
    certificate: dict[str, object] = {
        "surjection": sample.label,
        "cokernel": {fmt(i): n for i, n in cokernel.items() if n},
        "unstable": [fmt(i) for i, n in cokernel.items() if n is None],
    }
    for d in window.non_maximal():
        if all(cokernel[i] == 0 for i in window.strict_upper_set(d)):
            return CheckOutcome(
                check=SequenceCondition.PROJECTIVE.value,
                verdict=Verdict.VERIFIED,
                subject=sample.label,
                window=window.bounds(),
                certificate={**certificate, "bound": fmt(d)},
            )
    return CheckOutcome(
        check=SequenceCondition.PROJECTIVE.value,
        verdict=Verdict.INCONCLUSIVE,
        subject=sample.label,
        reason=(
            InconclusiveReason.PROBE_UNSTABLE
            if certificate["unstable"]
            else InconclusiveReason.WINDOW_EXHAUSTED
        ),
        window=window.bounds(),
        certificate=certificate,
    )


def _projective(
    samples: Sequence[ModulePresentation],
    extra: Sequence[SampledSurjection],
    window: Window,
    chain: Sequence[IndexElement],
) -> CheckOutcome:
    sampled = [s for m in samples for s in sampled_surjections(m, window)] + list(extra)
    saturations = _Saturations(chain, window)
    items: list[CheckOutcome] = []
    skipped: list[dict[str, object]] = []
    for sample in sampled:
        missed = missed_degrees(sample.map, window)
        if missed:
            logger.warning(
                "sampled_map_not_surjective",
                extra={"surjection": sample.label, "missed": missed},
            )
            skipped.append({"surjection": sample.label, "cokernel": missed})
            continue
        items.append(_projective_item(sample, window, saturations))
    outcome = aggregate(SequenceCondition.PROJECTIVE.value, items, window=window.bounds())
    if skipped:
        outcome.certificate = {"skipped": skipped}
    return outcome


def _tail_items(
    samples: Sequence[ModulePresentation],
    window: Window,
    chain: Sequence[Window],
    strict: bool,
    condition: SequenceCondition,
) -> list[CheckOutcome]:
    work = [(m, d) for m in samples for d in window.elements]
    fmt = window.poset.format_element

    def item(pair: tuple[ModulePresentation, IndexElement]) -> CheckOutcome:
        module, d = pair
        family = tail(module, d, strict, chain[-1])
        cut = ">" if strict else ">="
        return finite_generation_test(
            family, chain, check=condition.value, subject=f"{module.name}{cut}{fmt(d)}"
        )

    return run_items(item, work)


def check_sequence_conditions(
    algebra: IndexedAlgebra,
    window: Window,
    samples: Sequence[ModulePresentation],
    *,
    length: int | None = None,
    step: Step | None = None,
    probe_chain: Sequence[IndexElement] | None = None,
    surjections: Sequence[SampledSurjection] = (),
) -> CheckOutcome:
    """Verify (P), (C) and (A) for sample modules on a window.

    Args:
        algebra: The algebra the samples live over.
        window: Cut degrees and indices to test.
        samples: Finitely presented sample modules.
        length: Generation chain length.
        step: Growth step for box windows.
        probe_chain: Cut chain for the saturation probes behind (P);
            defaults to the window's diagonal chain.
        surjections: Further maps to test for (P) besides the sampled ones.

    Returns:
        Aggregate with one item per condition, in the order P, C, A.
    """
    start = time.perf_counter()
    chain = generation_chain(window, length, step)
    cuts = (
        list(probe_chain)
        if probe_chain is not None
        else window.diagonal_chain(get_settings().probe_chain_length)
    )
    bounds = window.bounds()
    conditions = [
        _projective(samples, surjections, window, cuts),
        aggregate(
            SequenceCondition.COHERENT.value,
            _tail_items(samples, window, chain, False, SequenceCondition.COHERENT),
            window=bounds,
        ),
        aggregate(
            SequenceCondition.AMPLE.value,
            _tail_items(samples, window, chain, True, SequenceCondition.AMPLE),
            window=bounds,
        ),
    ]
    outcome = aggregate("sequence", conditions, subject=algebra.name, window=bounds)
    logger.info(
        "sequence_checked",
        extra={
            "algebra": algebra.name,
            "samples": len(samples),
            "verdict": outcome.verdict.value,
            "elapsed_ms": (time.perf_counter() - start) * 1000,
        },
    )
    return outcome
