"""Finiteness criteria for indexed algebras.

Each checker returns a CheckOutcome. Per-index and per-pair items are
independent and go through the worker pool; their order in the outcome
follows the window's linear extension.
"""

from __future__ import annotations

import logging
import time
from collections.abc import Sequence

from src.algebra.base import IndexedAlgebra
from src.checks.evidence import KernelEvidence, StrongIndexEvidence
from src.checks.generation import finite_generation_test, generation_chain
from src.checks.pool import run_items
from src.gradedmod.modules import ModuleMap, free_module
from src.gradedmod.submodules import kernel_in_window, tail
from src.poset.posets import IndexElement, Poset, Step
from src.poset.window import Window
from src.shared.linalg import unit_vector
from src.shared.outcome import CheckOutcome, aggregate
from src.shared.types import InconclusiveReason, Verdict

logger = logging.getLogger(__name__)

STRONG_INDEXING_CRITERION = "star+strong-indexing"


def _tail_outcome(
    algebra: IndexedAlgebra,
    i: IndexElement,
    d: IndexElement,
    chain: Sequence[Window],
    check: str,
) -> CheckOutcome:
    fmt = algebra.poset.format_element
    module = free_module(algebra, [i], name=f"P{fmt(i)}")
    family = tail(module, d, True, chain[-1])
    subject = f"i={fmt(i)}" if i == d else f"pair={fmt(i)},{fmt(d)}"
    return finite_generation_test(family, chain, check=check, subject=subject)


def check_poset(poset: Poset) -> CheckOutcome:
    """Validate the poset axioms."""
    return poset.validate()


def check_connected(algebra: IndexedAlgebra) -> CheckOutcome:
    """Connectedness: every A_{ii} is one-dimensional."""
    return algebra.check_connected()


def check_star(
    algebra: IndexedAlgebra,
    window: Window,
    *,
    length: int | None = None,
    step: Step | None = None,
) -> CheckOutcome:
    """Finite generation of every diagonal tail P_{i,>i}, i in the window.

    Args:
        algebra: The algebra.
        window: Indices to test; the generation chain grows from it.
        length: Chain length (defaults to settings).
        step: Growth step for box windows.

    Returns:
        Aggregate outcome with one item per index.
    """
    start = time.perf_counter()
    chain = generation_chain(window, length, step)
    items = run_items(lambda i: _tail_outcome(algebra, i, i, chain, "star"), window.elements)
    outcome = aggregate("star", items, subject=algebra.name, window=window.bounds())
    _log_check(outcome, start)
    return outcome


def check_tails_cocompact(
    algebra: IndexedAlgebra,
    window: Window,
    pairs: Sequence[tuple[IndexElement, IndexElement]] | None = None,
    *,
    length: int | None = None,
    step: Step | None = None,
) -> CheckOutcome:
    """Finite generation of P_{i,>d} for pairs i <= d.

    Args:
        algebra: The algebra.
        window: Window the chain grows from.
        pairs: (i, d) pairs; defaults to every comparable pair in the window.
        length: Chain length.
        step: Growth step for box windows.

    Returns:
        Aggregate outcome with one item per pair.
    """
    start = time.perf_counter()
    poset = algebra.poset
    if pairs is None:
        pairs = [
            (i, d) for i in window.elements for d in window.elements if poset.leq(i, d)
        ]
    chain = generation_chain(window, length, step)
    items = run_items(
        lambda pair: _tail_outcome(algebra, pair[0], pair[1], chain, "cocompact"), list(pairs)
    )
    outcome = aggregate("cocompact", items, subject=algebra.name, window=window.bounds())
    _log_check(outcome, start)
    return outcome


def check_strongly_indexed(algebra: IndexedAlgebra, window: Window) -> CheckOutcome:
    """Compare span(A_{id} * A_{du}) with A_{iu} for every i < d < u in the window.

    Triples are scanned by i, then u, in window order, with d from the
    top down. The first shortfall refutes, with the first basis path of
    A_{iu} outside the span as witness.
    """
    start = time.perf_counter()
    poset = algebra.poset
    fmt = poset.format_element
    checked = 0
    for i in window.elements:
        for u in window.elements:
            if not poset.lt(i, u):
                continue
            n = algebra.dimension(i, u)
            for d in reversed(window.elements):
                if not (poset.lt(i, d) and poset.lt(d, u)):
                    continue
                checked += 1
                span = algebra.product_span(i, d, u)
                if span.rank == n:
                    continue
                witness = next(
                    k for k in range(n) if not span.contains(unit_vector(algebra.field, k))
                )
                label = algebra.component_basis(i, u).labels[witness]
                outcome = CheckOutcome(
                    check="strong",
                    verdict=Verdict.REFUTED,
                    subject=algebra.name,
                    window=window.bounds(),
                    certificate={
                        "triple": [fmt(i), fmt(d), fmt(u)],
                        "span_dimension": span.rank,
                        "dimension": n,
                        "witness": label,
                    },
                    evidence=StrongIndexEvidence(algebra, i, d, u, witness),
                )
                _log_check(outcome, start)
                return outcome
    outcome = CheckOutcome(
        check="strong",
        verdict=Verdict.VERIFIED,
        subject=algebra.name,
        window=window.bounds(),
        certificate={"triples_checked": checked},
    )
    _log_check(outcome, start)
    return outcome


def check_cocompact_by_strong_indexing(
    algebra: IndexedAlgebra,
    window: Window,
    *,
    length: int | None = None,
    step: Step | None = None,
) -> CheckOutcome:
    """Tails-cocompactness from diagonal finite generation plus strong indexing.

    When every P_{i,>i} is finitely generated and every A_{iu} is spanned
    by products through each intermediate index, P_{i,>d} is A_{id} times
    P_{d,>d} and so finitely generated. The noetherian route is not
    decidable from a presentation and is reported as unavailable.
    """
    star = check_star(algebra, window, length=length, step=step)
    strong = check_strongly_indexed(algebra, window)
    applies = star.passed and strong.passed
    outcome = CheckOutcome(
        check="criterion",
        verdict=Verdict.VERIFIED_BY_CRITERION if applies else Verdict.INCONCLUSIVE,
        subject=algebra.name,
        reason=None if applies else InconclusiveReason.NOT_APPLICABLE,
        criterion=STRONG_INDEXING_CRITERION if applies else None,
        window=window.bounds(),
        certificate={"noetherian_route": "unavailable"},
        items=[star, strong],
    )
    logger.info(
        "criterion_evaluated",
        extra={"algebra": algebra.name, "verdict": outcome.verdict.value},
    )
    return outcome


def check_coherence_probe(
    algebra: IndexedAlgebra,
    window: Window,
    trial_maps: Sequence[ModuleMap],
    *,
    length: int | None = None,
    step: Step | None = None,
) -> CheckOutcome:
    """Finite generation of the kernels of sample maps between free modules.

    A probe over the supplied maps only; it does not decide coherence.
    """
    start = time.perf_counter()
    chain = generation_chain(window, length, step)
    top = chain[-1]

    def probe(indexed: tuple[int, ModuleMap]) -> CheckOutcome:
        k, f = indexed
        kernel = kernel_in_window(f, top)
        outcome = finite_generation_test(kernel, chain, check="coherence", subject=f"map {k}")
        outcome.certificate["kernel_total"] = sum(kernel.dimensions().values())
        outcome.evidence.kernel = KernelEvidence(f, top, kernel.dimensions())
        return outcome

    items = run_items(probe, list(enumerate(trial_maps)))
    outcome = aggregate("coherence", items, subject=algebra.name, window=window.bounds())
    _log_check(outcome, start)
    return outcome


def _log_check(outcome: CheckOutcome, start: float) -> None:
    logger.info(
        "check_completed",
        extra={
            "check": outcome.check,
            "subject": outcome.subject,
            "verdict": outcome.verdict.value,
            "elapsed_ms": (time.perf_counter() - start) * 1000,
        },
    )
