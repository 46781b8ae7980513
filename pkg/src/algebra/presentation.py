"""Algebras presented by generators and homogeneous relations.

A component A_{ij} is computed exactly on demand: enumerate the paths
from i to j (finitely many, since every generator moves strictly up inside
the finite interval [i, j]), span the relation slice by all products
u * r * v of matching degree, and eliminate. The basis is the greedy
deglex complement of the slice: a path is a basis path when it is not a
combination of relations and earlier paths.
"""

from __future__ import annotations

import logging
import threading
import time
from collections.abc import Hashable, Iterable, Sequence
from dataclasses import dataclass, field

from src.algebra.base import AlgebraElement, ComponentBasis, IndexedAlgebra, Word
from src.algebra.moves import (
    Move,
    Shift,
    apply_move,
    compose_moves,
    format_move,
    identity_move,
    is_strictly_positive,
    validate_move,
)
from src.config.settings import Settings, get_settings
from src.poset.posets import IndexElement, IntegerLattice, Poset, is_name
from src.shared.errors import DegreeMismatchError, PresentationError, ResourceLimitError
from src.shared.field import FieldSpec, Scalar
from src.shared.linalg import EchelonBasis, SparseVector, add_scaled
from src.shared.types import AlgebraKind

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Generator:
    """A generator symbol with its degree move."""

    name: str
    move: Move


@dataclass(frozen=True)
class Relation:
    """A homogeneous linear combination of words that vanishes.

    Attributes:
        move: Declared degree of every word.
        terms: (coefficient, word) pairs with nonzero coefficients.
    """

    move: Move
    terms: tuple[tuple[Scalar, Word], ...]


@dataclass
class _Slice:
    """Elimination data of one component."""

    paths: list[Word]
    column: dict[Word, int]
    relations: EchelonBasis
    basis: list[Word]
    coordinate: dict[int, int] = field(default_factory=dict)
    forms: dict[Word, SparseVector] = field(default_factory=dict)

    def normal_form(self, word: Word, one: Scalar) -> SparseVector:
        """Coordinates of a path over the basis paths."""
        cached = self.forms.get(word)
        if cached is not None:
            return cached
        n = len(self.paths)
        reduced = self.relations.reduce({n - 1 - self.column[word]: one})
        form = {self.coordinate[c]: x for c, x in reduced.items()}
        self.forms[word] = form
        return form


class AlgebraPresentation(IndexedAlgebra):
    """A connected, positively indexed algebra given by generators and relations.

    Args:
        poset: Index poset.
        field: Coefficient field.
        generators: Generators in their fixed order (this order drives deglex).
        relations: Homogeneous relations.
        name: Display name.
        declared_kind: Kind stated in the input, checked against the moves.
        settings: Resource ceilings (defaults to get_settings()).

    Raises:
        PresentationError: On duplicate names, non-positive moves,
            unknown generators, or inhomogeneous relations.
    """

    def __init__(
        self,
        poset: Poset,
        field: FieldSpec,
        generators: Sequence[Generator],
        relations: Sequence[Relation] = (),
        *,
        name: str = "A",
        declared_kind: AlgebraKind | None = None,
        settings: Settings | None = None,
    ) -> None:
        self.poset = poset
        self.field = field
        self.name = name
        self.settings = settings or get_settings()
        self.generators: tuple[Generator, ...] = tuple(generators)
        self._order = {g.name: k for k, g in enumerate(self.generators)}
        self._moves = {g.name: g.move for g in self.generators}
        self._validate_generators()
        self.relations: tuple[Relation, ...] = tuple(self._normalize(r) for r in relations)
        invariant = isinstance(poset, IntegerLattice) and all(
            isinstance(g.move, Shift) for g in self.generators
        )
        self._kind = AlgebraKind.INVARIANT if invariant else AlgebraKind.EXPLICIT
        if declared_kind is not None and declared_kind != self._kind:
            raise PresentationError(
                f"algebra declared {declared_kind.value} but its generators make it "
                f"{self._kind.value}"
            )
        self._lock = threading.Lock()
        self._paths: dict[Hashable, list[Word]] = {}
        self._slices: dict[Hashable, _Slice] = {}

    @property
    def kind(self) -> AlgebraKind:
        return self._kind

    def _validate_generators(self) -> None:
        if len(self._order) != len(self.generators):
            raise PresentationError("duplicate generator name")
        for g in self.generators:
            if not is_name(g.name):
                raise PresentationError(f"bad generator name {g.name!r}")
            validate_move(self.poset, g.move)
            if not is_strictly_positive(self.poset, g.move):
                raise PresentationError(
                    f"generator {g.name} has non-positive degree "
                    f"{format_move(self.poset, g.move)}"
                )

    def word_move(self, word: Word) -> Move | None:
        """Composite move of a word, or None if its steps do not chain.

        Raises:
            PresentationError: If the word uses an unknown generator.
        """
        move: Move | None = identity_move(self.poset)
        for name in word:
            if name not in self._moves:
                raise PresentationError(f"unknown generator {name!r}")
            assert move is not None
            move = compose_moves(move, self._moves[name])
            if move is None:
                return None
        return move

    def word_target(self, i: IndexElement, word: Word) -> IndexElement | None:
        """Index reached by following word from i, or None."""
        current: IndexElement | None = i
        for name in word:
            if name not in self._moves:
                raise PresentationError(f"unknown generator {name!r}")
            assert current is not None
            current = apply_move(self.poset, self._moves[name], current)
            if current is None:
                return None
        return current

    def _normalize(self, relation: Relation) -> Relation:
        f = self.field
        combined: dict[Word, Scalar] = {}
        for coef, word in relation.terms:
            if not word:
                raise PresentationError("relation terms need at least one generator")
            move = self.word_move(word)
            if move != relation.move:
                shown = "?" if move is None else format_move(self.poset, move)
                raise PresentationError(
                    f"inhomogeneous relation: path {'*'.join(word)} has degree {shown}, "
                    f"declared {format_move(self.poset, relation.move)}"
                )
            combined[word] = f.add(combined.get(word, f.zero()), f.coerce(coef))
        terms = tuple(sorted(((c, w) for w, c in combined.items() if c != 0), key=self._wkey))
        return Relation(relation.move, terms)

    def _wkey(self, term: tuple[Scalar, Word]) -> tuple[int, list[int]]:
        return self.word_key(term[1])

    def word_key(self, word: Word) -> tuple[int, list[int]]:
        """Deglex key: length, then generator order."""
        return (len(word), [self._order[n] for n in word])

    def _key(self, i: IndexElement, j: IndexElement) -> Hashable:
        if self._kind == AlgebraKind.INVARIANT:
            assert isinstance(self.poset, IntegerLattice)
            return self.poset.difference(i, j)
        return (i, j)

    def paths(self, i: IndexElement, j: IndexElement) -> list[Word]:
        """All paths from i to j in deglex order (the empty word when i = j).

        Raises:
            ResourceLimitError: If more than settings.path_count_limit paths exist.
        """
        if not self.poset.leq(i, j):
            return []
        key = self._key(i, j)
        cached = self._paths.get(key)
        if cached is not None:
            return cached
        found: list[Word] = []
        ceiling = self.settings.path_count_limit

        def walk(current: IndexElement, word: Word) -> None:
            if current == j:
                found.append(word)
                if len(found) > ceiling:
                    raise ResourceLimitError("paths", len(found), ceiling)
                return
            for g in self.generators:
                nxt = apply_move(self.poset, g.move, current)
                if nxt is not None and self.poset.leq(nxt, j):
                    walk(nxt, (*word, g.name))

        walk(i, ())
        found.sort(key=self.word_key)
        with self._lock:
            return self._paths.setdefault(key, found)

    def _slice(self, i: IndexElement, j: IndexElement) -> _Slice:
        key = self._key(i, j)
        cached = self._slices.get(key)
        if cached is not None:
            return cached
        start = time.perf_counter()
        paths = self.paths(i, j)
        n = len(paths)
        column = {p: k for k, p in enumerate(paths)}
        relations = EchelonBasis(self.field)
        if i != j and self.relations:
            for c in self.poset.interval(i, j):
                for rel in self.relations:
                    c2 = apply_move(self.poset, rel.move, c)
                    if c2 is None or not self.poset.leq(c2, j):
                        continue
                    for u in self.paths(i, c):
                        for v in self.paths(c2, j):
                            vec: SparseVector = {}
                            for coef, w in rel.terms:
                                add_scaled(self.field, vec, {n - 1 - column[u + w + v]: coef}, 1)
                            if vec:
                                relations.add(vec)
        pivots = set(relations.pivots)
        basis = [p for p in paths if n - 1 - column[p] not in pivots]
        if len(basis) > self.settings.component_dim_limit:
            raise ResourceLimitError("dimension", len(basis), self.settings.component_dim_limit)
        coordinate = {n - 1 - column[p]: k for k, p in enumerate(basis)}
        computed = _Slice(paths, column, relations, basis, coordinate)
        logger.info(
            "component_computed",
            extra={
                "algebra": self.name,
                "pair": [self.poset.format_element(i), self.poset.format_element(j)],
                "paths": n,
                "dimension": len(basis),
                "elapsed_ms": (time.perf_counter() - start) * 1000,
            },
        )
        with self._lock:
            return self._slices.setdefault(key, computed)

    def format_word(self, word: Word) -> str:
        """Render a path as `x*y`, or `e` for the empty word."""
        return "*".join(word) if word else "e"

    def component_basis(self, i: IndexElement, j: IndexElement) -> ComponentBasis:
        if not self.poset.leq(i, j):
            return ComponentBasis(i, j, ())
        s = self._slice(i, j)
        return ComponentBasis(
            i, j, tuple(self.format_word(w) for w in s.basis), tuple(s.basis)
        )

    def normal_form(self, i: IndexElement, j: IndexElement, word: Word) -> SparseVector:
        """Coordinates of a path i -> j over the basis of A_{ij}.

        Raises:
            DegreeMismatchError: If the word is not a path from i to j.
        """
        if self.word_target(i, word) != j:
            raise DegreeMismatchError(
                f"{self.format_word(word)} is not a path from "
                f"{self.poset.format_element(i)} to {self.poset.format_element(j)}"
            )
        return dict(self._slice(i, j).normal_form(word, self.field.one()))

    def multiply(self, a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
        self.check_degrees(a, b)
        i, k = a.source, b.target
        if a.is_zero() or b.is_zero():
            return self.zero(i, k)
        f = self.field
        left = self._slice(a.source, a.target).basis
        right = self._slice(b.source, b.target).basis
        target = self._slice(i, k)
        out: SparseVector = {}
        for k1, x1 in a.coords:
            for k2, x2 in b.coords:
                form = target.normal_form(left[k1] + right[k2], f.one())
                add_scaled(f, out, form, f.mul(x1, x2))
        return self.element(i, k, out)

    def unit(self, i: IndexElement) -> AlgebraElement:
        self.poset.check(i)
        return self.element(i, i, {0: self.field.one()})

    def generator_targets(self, i: IndexElement) -> list[AlgebraElement]:
        out: list[AlgebraElement] = []
        for g in self.generators:
            t = apply_move(self.poset, g.move, i)
            if t is None:
                continue
            element = self.element(i, t, self.normal_form(i, t, (g.name,)))
            if not element.is_zero():
                out.append(element)
        return out

    def element_from_terms(
        self,
        i: IndexElement,
        j: IndexElement,
        terms: Iterable[tuple[Scalar | int, Word]],
    ) -> AlgebraElement:
        """Build sum(coef * word) in A_{ij}.

        Args:
            i: Source index.
            j: Target index.
            terms: (coefficient, word) pairs; the empty word is e_i.

        Returns:
            The reduced element.

        Raises:
            DegreeMismatchError: If a word is not a path from i to j.
        """
        f = self.field
        out: SparseVector = {}
        for coef, word in terms:
            add_scaled(f, out, self.normal_form(i, j, word), f.coerce(coef))
        return self.element(i, j, out)

    def word_element(self, i: IndexElement, word: Word) -> AlgebraElement:
        """The element of a single path starting at i.

        Raises:
            DegreeMismatchError: If the word does not apply at i.
        """
        j = self.word_target(i, word)
        if j is None:
            raise DegreeMismatchError(f"{self.format_word(word)} does not apply at {i!r}")
        return self.element_from_terms(i, j, [(1, word)])
