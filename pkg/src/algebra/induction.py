"""Component dimensions by induction on interval length.

An independent oracle for `component_basis`: A_{ij} is the image of the
multiplication from every intermediate degree plus the part reached by
generators of the diagonal tail P_{i,>i} that live at j. Agreement of the
two computations is tested on every small interval.
"""

from __future__ import annotations

from src.algebra.base import IndexedAlgebra, StarGenerators
from src.poset.posets import IndexElement
from src.shared.errors import StarGeneratorsUnavailable
from src.shared.linalg import EchelonBasis


def dim_via_induction(
    algebra: IndexedAlgebra,
    i: IndexElement,
    j: IndexElement,
    star: StarGenerators | None = None,
) -> int:
    """dim A_{ij} as dim(image of products) + dim(cokernel).

    Args:
        algebra: The algebra.
        i: Source index.
        j: Target index.
        star: Generating set of P_{i,>i}; defaults to the algebra's own.

    Returns:
        The dimension of A_{ij}.

    Raises:
        StarGeneratorsUnavailable: If the supplied set is not verified.
    """
    poset = algebra.poset
    if not poset.leq(i, j):
        return 0
    if i == j:
        return 1
    gens = star if star is not None else algebra.star_generators(i)
    if not gens.verified or gens.index != i:
        raise StarGeneratorsUnavailable(
            f"no verified generating set of the diagonal tail at {poset.format_element(i)}"
        )
    span = EchelonBasis(algebra.field)
    for r in poset.interval(i, j):
        if r in (i, j):
            continue
        for row in algebra.product_span(i, r, j).rows():
            span.add(row)
    for g in gens.elements:
        if g.target == j:
            span.add(g.vector)
    return span.rank
