"""Exact sparse linear algebra over a FieldSpec.

Vectors are dicts from column index to nonzero field element. Row
reduction is incremental: an EchelonBasis keeps rows with distinct
leading columns (leading coefficient 1), so membership tests and
normal forms are a single forward sweep.
"""

from __future__ import annotations

import bisect
import heapq
from collections.abc import Hashable, Iterable, Sequence
from typing import cast

from src.shared.field import FieldSpec, Scalar

SparseVector = dict[int, Scalar]


def add_scaled(field: FieldSpec, v: SparseVector, w: SparseVector, c: Scalar) -> None:
    """In place: v += c * w, dropping entries that cancel.

    Args:
        field: Coefficient field.
        v: Vector updated in place.
        w: Vector added.
        c: Scalar multiplier.
    """
    if c == 0:
        return
    for k, x in w.items():
        y = field.add(v.get(k, field.zero()), field.mul(c, x))
        if y == 0:
            v.pop(k, None)
        else:
            v[k] = y


def scaled(field: FieldSpec, v: SparseVector, c: Scalar) -> SparseVector:
    """Return c * v."""
    if c == 0:
        return {}
    return {k: field.mul(c, x) for k, x in v.items()}


def combine(field: FieldSpec, terms: Iterable[tuple[Scalar, SparseVector]]) -> SparseVector:
    """Return the linear combination sum(c * v)."""
    out: SparseVector = {}
    for c, v in terms:
        add_scaled(field, out, v, c)
    return out


def unit_vector(field: FieldSpec, k: int) -> SparseVector:
    """Return the k-th standard basis vector."""
    return {k: field.one()}


class EchelonBasis:
    """Incrementally row-reduced spanning set of a subspace.

    With track=True every stored row remembers which tagged inputs it
    is a combination of, so `express` can write a vector of the span in
    terms of the inputs, and dependent inputs are recorded as relations.

    Attributes:
        field: Coefficient field.
        relations: Tag combinations summing to zero, one per dependent
            input (only with track=True).
    """

    def __init__(self, field: FieldSpec, *, track: bool = False) -> None:
        self.field = field
        self._track = track
        self._rows: dict[int, SparseVector] = {}
        self._combos: dict[int, dict[Hashable, Scalar]] = {}
        self._order: list[int] = []
        self.relations: list[dict[Hashable, Scalar]] = []

    @property
    def rank(self) -> int:
        """Dimension of the span."""
        return len(self._order)

    @property
    def pivots(self) -> list[int]:
        """Leading columns, ascending."""
        return list(self._order)

    def rows(self) -> list[SparseVector]:
        """Return the echelon rows in pivot order."""
        return [dict(self._rows[c]) for c in self._order]

    def copy(self) -> EchelonBasis:
        """Return an independent copy."""
        other = EchelonBasis(self.field, track=self._track)
        other._rows = {c: dict(r) for c, r in self._rows.items()}
        other._combos = {c: dict(r) for c, r in self._combos.items()}
        other._order = list(self._order)
        other.relations = [dict(r) for r in self.relations]
        return other

    def _sweep(self, v: SparseVector) -> tuple[SparseVector, dict[Hashable, Scalar]]:
        f = self.field
        rem = dict(v)
        combo: dict[Hashable, Scalar] = {}
        heap = [c for c in rem if c in self._rows]
        heapq.heapify(heap)
        while heap:
            c = heapq.heappop(heap)
            a = rem.get(c)
            if not a:
                continue
            row = self._rows[c]
            add_scaled(f, rem, row, f.neg(a))
            for k in row:
                if k != c and k in self._rows and k in rem:
                    heapq.heappush(heap, k)
            if self._track:
                for t, x in self._combos[c].items():
                    y = f.add(combo.get(t, f.zero()), f.mul(a, x))
                    if y == 0:
                        combo.pop(t, None)
                    else:
                        combo[t] = y
        return rem, combo

    def reduce(self, v: SparseVector) -> SparseVector:
        """Return the normal form of v: zero on every pivot column."""
        return self._sweep(v)[0]

    def contains(self, v: SparseVector) -> bool:
        """True if v lies in the span."""
        return not self._sweep(v)[0]

    def express(self, v: SparseVector) -> dict[Hashable, Scalar] | None:
        """Write v as a combination of tagged inputs.

        Args:
            v: Vector to express.

        Returns:
            Mapping tag -> coefficient with v = sum(coef * input), or None
            if v is outside the span.

        Raises:
            ValueError: If the basis was built without tracking.
        """
        if not self._track:
            raise ValueError("express needs a tracked EchelonBasis")
        rem, combo = self._sweep(v)
        return None if rem else combo

    def add(self, v: SparseVector, tag: Hashable | None = None) -> bool:
        """Insert v into the span.

        Args:
            v: Vector to insert.
            tag: Label recorded for `express` (tracked bases only).

        Returns:
            True if v was independent of the current span.
        """
        f = self.field
        rem, combo = self._sweep(v)
        if self._track:
            neg = {t: f.neg(x) for t, x in combo.items()}
            neg[tag] = f.add(neg.get(tag, f.zero()), f.one())
            combo = {t: x for t, x in neg.items() if x != 0}
        if not rem:
            if self._track and combo:
                self.relations.append(combo)
            return False
        lead = min(rem)
        s = f.inv(rem[lead])
        self._rows[lead] = scaled(f, rem, s)
        if self._track:
            self._combos[lead] = {t: f.mul(s, x) for t, x in combo.items()}
        bisect.insort(self._order, lead)
        return True

    def extend(self, vectors: Iterable[SparseVector]) -> int:
        """Insert several vectors; return how many were independent."""
        return sum(1 for v in vectors if self.add(v))


def rank(field: FieldSpec, vectors: Iterable[SparseVector]) -> int:
    """Return the dimension of the span of vectors."""
    basis = EchelonBasis(field)
    basis.extend(vectors)
    return basis.rank


def kernel_basis(field: FieldSpec, columns: Sequence[SparseVector]) -> list[SparseVector]:
    """Return a basis of {c : sum_t c_t * columns[t] = 0}.

    Args:
        field: Coefficient field.
        columns: Images of the standard basis vectors.

    Returns:
        Kernel vectors indexed by column position.
    """
    basis = EchelonBasis(field, track=True)
    for t, col in enumerate(columns):
        basis.add(col, tag=t)
    out: list[SparseVector] = []
    for rel in basis.relations:
        out.append({cast(int, t): x for t, x in rel.items()})
    return out


def non_pivot_columns(basis: EchelonBasis, width: int) -> list[int]:
    """Columns in range(width) that are not pivots: a quotient basis."""
    pivots = set(basis.pivots)
    return [c for c in range(width) if c not in pivots]
