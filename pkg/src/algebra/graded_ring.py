"""Delooping of a Z^r-graded ring into a translation-invariant indexed algebra."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass

from src.algebra.base import Word
from src.algebra.moves import Shift
from src.algebra.presentation import AlgebraPresentation, Generator, Relation
from src.config.settings import Settings
from src.poset.posets import IntegerLattice
from src.shared.errors import PresentationError
from src.shared.field import FieldSpec, Scalar
from src.shared.types import AlgebraKind

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GradedRingPresentation:
    """A connected Z^r-graded ring S given by generators and relations.

    Attributes:
        rank: r, the rank of the grading group.
        field: Coefficient field (S_0).
        generators: (name, degree) pairs, degrees in N^r without zero.
        relations: (degree, terms) pairs; terms are (coefficient, word).
        name: Display name of the delooped algebra.
    """

    rank: int
    field: FieldSpec
    generators: tuple[tuple[str, tuple[int, ...]], ...]
    relations: tuple[tuple[tuple[int, ...], tuple[tuple[Scalar, Word], ...]], ...] = ()
    name: str = "S"


def _check_degree(rank: int, name: str, degree: Sequence[int]) -> None:
    if len(degree) != rank:
        raise PresentationError(f"generator {name} has degree of length {len(degree)}, not {rank}")
    if any(c < 0 for c in degree) or not any(degree):
        raise PresentationError(f"generator {name} must have degree in N^{rank} without 0")


def from_graded_ring(
    ring: GradedRingPresentation, *, settings: Settings | None = None
) -> AlgebraPresentation:
    """Return the indexed algebra with components (B S)_{g,h} = S_{h-g}.

    Args:
        ring: The graded ring presentation.
        settings: Resource ceilings for the resulting algebra.

    Returns:
        An invariant-kind AlgebraPresentation on the lattice Z^r.

    Raises:
        PresentationError: On a non-positive generator degree or an
            inhomogeneous relation.
    """
    for name, degree in ring.generators:
        _check_degree(ring.rank, name, degree)
    generators = [Generator(name, Shift(tuple(degree))) for name, degree in ring.generators]
    relations = [Relation(Shift(tuple(degree)), tuple(terms)) for degree, terms in ring.relations]
    algebra = AlgebraPresentation(
        IntegerLattice(ring.rank),
        ring.field,
        generators,
        relations,
        name=ring.name,
        declared_kind=AlgebraKind.INVARIANT,
        settings=settings,
    )
    logger.info(
        "graded_ring_delooped",
        extra={"name": ring.name, "generators": len(generators), "relations": len(relations)},
    )
    return algebra
