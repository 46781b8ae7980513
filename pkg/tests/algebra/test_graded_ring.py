"""Tests for delooping graded rings."""

import pytest

from src.algebra.graded_ring import GradedRingPresentation, from_graded_ring
from src.shared.errors import PresentationError
from src.shared.field import FieldSpec
from src.shared.types import AlgebraKind

Q = FieldSpec.rationals()


def _ring(**kwargs: object) -> GradedRingPresentation:
    fields: dict[str, object] = {
        "rank": 2,
        "field": Q,
        "generators": (("x", (1, 0)), ("y", (0, 1))),
        "relations": (((1, 1), ((1, ("x", "y")), (-1, ("y", "x")))),),
        "name": "S",
    }
    fields.update(kwargs)
    return GradedRingPresentation(**fields)  # type: ignore[arg-type]


class TestFromGradedRing:
    """Components (B S)_{g,h} = S_{h-g}."""

    def test_polynomial_ring(self) -> None:
        """The delooped polynomial ring has one-dimensional components."""
        algebra = from_graded_ring(_ring())
        assert algebra.kind == AlgebraKind.INVARIANT
        assert algebra.name == "S"
        assert algebra.dimension((0, 0), (2, 3)) == 1
        assert algebra.dimension((5, 5), (7, 8)) == 1

    def test_free_ring(self) -> None:
        """Without relations every word survives."""
        algebra = from_graded_ring(_ring(relations=()))
        assert algebra.dimension((0, 0), (2, 2)) == 6

    def test_single_variable_with_degree_two(self) -> None:
        """k[t] with t in degree 2 vanishes in odd degrees."""
        algebra = from_graded_ring(_ring(rank=1, generators=(("t", (2,)),), relations=()))
        assert algebra.dimension((0,), (4,)) == 1
        assert algebra.dimension((0,), (3,)) == 0

    @pytest.mark.parametrize("degree", [(0, 0), (1, -1), (1,)])
    def test_bad_degree(self, degree: tuple[int, ...]) -> None:
        """Degrees must be nonzero vectors in N^r."""
        with pytest.raises(PresentationError):
            from_graded_ring(_ring(generators=(("x", degree),), relations=()))

    def test_inhomogeneous_relation(self) -> None:
        """Relations must be homogeneous."""
        with pytest.raises(PresentationError):
            from_graded_ring(_ring(relations=(((1, 1), ((1, ("x", "x")),)),)))
