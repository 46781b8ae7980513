"""Tests for exact sparse linear algebra."""

from fractions import Fraction

import pytest

from src.shared.field import FieldSpec
from src.shared.linalg import (
    EchelonBasis,
    SparseVector,
    add_scaled,
    combine,
    kernel_basis,
    non_pivot_columns,
    rank,
)

Q = FieldSpec.rationals()


def _q(*values: int) -> SparseVector:
    return {k: Fraction(v) for k, v in enumerate(values) if v}


class TestVectors:
    """Sparse vector helpers."""

    def test_add_scaled_drops_cancellation(self) -> None:
        """Entries that cancel disappear."""
        v = _q(1, 2)
        add_scaled(Q, v, _q(1, 0), Fraction(-1))
        assert v == {1: Fraction(2)}

    def test_combine(self) -> None:
        """Linear combination of two vectors."""
        out = combine(Q, [(Fraction(2), _q(1, 0)), (Fraction(3), _q(0, 1))])
        assert out == {0: 2, 1: 3}


class TestEchelonBasis:
    """Incremental row reduction."""

    def test_rank_of_dependent_rows(self) -> None:
        """A multiple of a row adds nothing."""
        assert rank(Q, [_q(1, 1), _q(2, 2), _q(0, 1)]) == 2

    def test_add_reports_independence(self) -> None:
        """add returns False for dependent vectors."""
        basis = EchelonBasis(Q)
        assert basis.add(_q(1, 1))
        assert not basis.add(_q(3, 3))
        assert basis.rank == 1

    def test_contains_and_reduce(self) -> None:
        """Members reduce to zero, non-members do not."""
        basis = EchelonBasis(Q)
        basis.add(_q(1, 1, 0))
        assert basis.contains(_q(2, 2, 0))
        assert not basis.contains(_q(0, 0, 1))
        assert basis.reduce(_q(1, 0, 0)) == {1: Fraction(-1)}

    def test_express_tracked(self) -> None:
        """A tracked basis writes vectors over its tagged inputs."""
        basis = EchelonBasis(Q, track=True)
        basis.add(_q(1, 0), tag="a")
        basis.add(_q(0, 1), tag="b")
        assert basis.express(_q(2, 3)) == {"a": 2, "b": 3}

    def test_express_outside_span(self) -> None:
        """Vectors outside the span cannot be expressed."""
        basis = EchelonBasis(Q, track=True)
        basis.add(_q(1, 0), tag=0)
        assert basis.express(_q(0, 1)) is None

    def test_express_needs_tracking(self) -> None:
        """An untracked basis refuses to express."""
        with pytest.raises(ValueError):
            EchelonBasis(Q).express(_q(1))

    def test_copy_is_independent(self) -> None:
        """Adding to a copy leaves the original alone."""
        basis = EchelonBasis(Q)
        basis.add(_q(1, 0))
        other = basis.copy()
        other.add(_q(0, 1))
        assert basis.rank == 1
        assert other.rank == 2

    def test_prime_field_rank(self) -> None:
        """Rows independent over Q can be dependent over F_2."""
        f2 = FieldSpec.prime(2)
        assert rank(f2, [{0: 1, 1: 1}, {1: 1, 2: 1}, {0: 1, 2: 1}]) == 2


class TestKernel:
    """Kernels and quotient bases."""

    def test_kernel_vectors_vanish(self) -> None:
        """Each kernel vector combines the columns to zero."""
        columns = [_q(1, 0), _q(1, 0), _q(0, 1)]
        kernel = kernel_basis(Q, columns)
        assert len(kernel) == 1
        total = combine(Q, [(c, columns[t]) for t, c in kernel[0].items()])
        assert total == {}

    def test_injective_columns(self) -> None:
        """Independent columns have a zero kernel."""
        assert kernel_basis(Q, [_q(1, 0), _q(0, 1)]) == []

    def test_zero_column(self) -> None:
        """A zero column spans the kernel by itself."""
        assert kernel_basis(Q, [{}]) == [{0: 1}]

    def test_non_pivot_columns(self) -> None:
        """Columns without a pivot form a quotient basis."""
        basis = EchelonBasis(Q)
        basis.add(_q(0, 1, 1))
        assert non_pivot_columns(basis, 3) == [0, 2]
