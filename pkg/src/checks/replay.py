"""Independent re-validation of check certificates.

Replay never reuses the sweep that produced a certificate: generator
lists are closed under the action from scratch, refutation witnesses are
re-tested with one rank computation, and recorded dimensions are
recomputed.
"""

from __future__ import annotations

import logging

from src.checks.evidence import (
    ConnectedEvidence,
    GenerationEvidence,
    KernelEvidence,
    StrongIndexEvidence,
)
from src.gradedmod.generation import close_family
from src.gradedmod.hom import hom_space
from src.gradedmod.submodules import kernel_in_window
from src.poset.posets import IndexElement
from src.shared.errors import CertificateError
from src.shared.linalg import SparseVector, unit_vector
from src.shared.outcome import CheckOutcome

logger = logging.getLogger(__name__)


def _replay_generation(evidence: GenerationEvidence) -> None:
    family = evidence.family
    window = family.window
    seeds: dict[IndexElement, list[SparseVector]] = {}
    for entry in evidence.report.entries:
        seeds.setdefault(entry.degree, []).extend(entry.representatives)
    closure = close_family(window, family.field, seeds, family)
    fmt = window.poset.format_element
    for d in window.elements:
        target = family.space(d)
        found = closure.get(d)
        rank = found.rank if found is not None else 0
        if rank != target.rank or (
            found is not None and not all(target.contains(row) for row in found.rows())
        ):
            raise CertificateError(
                f"listed generators do not generate the family at {fmt(d)}: "
                f"closure rank {rank}, family rank {target.rank}"
            )
    if evidence.kernel is not None:
        _replay_kernel(evidence.kernel)


def _replay_kernel(evidence: KernelEvidence) -> None:
    recomputed = kernel_in_window(evidence.trial_map, evidence.window).dimensions()
    if recomputed != evidence.dimensions:
        raise CertificateError("kernel dimensions do not match the certificate")


def _replay_strong(evidence: StrongIndexEvidence) -> None:
    algebra = evidence.algebra
    span = algebra.product_span(evidence.i, evidence.d, evidence.u)
    n = algebra.dimension(evidence.i, evidence.u)
    if span.rank >= n or span.contains(unit_vector(algebra.field, evidence.witness)):
        raise CertificateError("strong-indexing witness lies in the product span")


def _replay_connected(evidence: ConnectedEvidence) -> None:
    module = evidence.module
    dimension = hom_space(module, module).dimension
    if dimension != evidence.dimension:
        raise CertificateError(
            f"End({module.name}) has dimension {dimension}, certificate says "
            f"{evidence.dimension}"
        )


def replay(outcome: CheckOutcome) -> int:
    """Re-validate every certificate in an outcome tree.

    Args:
        outcome: A check outcome, possibly aggregating items.

    Returns:
        Number of certificates replayed.

    Raises:
        CertificateError: If any certificate fails to re-validate.
    """
    replayed = 0
    for node in outcome.walk():
        evidence = node.evidence
        if isinstance(evidence, GenerationEvidence):
            _replay_generation(evidence)
        elif isinstance(evidence, StrongIndexEvidence):
            _replay_strong(evidence)
        elif isinstance(evidence, KernelEvidence):
            _replay_kernel(evidence)
        elif isinstance(evidence, ConnectedEvidence):
            _replay_connected(evidence)
        else:
            continue
        replayed += 1
    logger.info("certificates_replayed", extra={"check": outcome.check, "count": replayed})
    return replayed
