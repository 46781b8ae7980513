"""Finitely presented graded right modules over an indexed algebra.

A module is the cokernel of a map between finite free modules. Its
component at d is computed exactly: the ambient space is the direct sum
of A_{j_l,d} over the cover generators, and the relation columns evaluated
at d span the subspace to divide out. Elements are stored as ambient
vectors in normal form (zero on every pivot column of that subspace), so
equality of elements is equality of vectors.
"""

from __future__ import annotations

import bisect
import logging
import threading
import time
from collections.abc import Sequence
from dataclasses import dataclass, field

from src.algebra.base import AlgebraElement, IndexedAlgebra, StarGenerators
from src.poset.posets import IndexElement
from src.shared.errors import DegreeMismatchError, StarGeneratorsUnavailable
from src.shared.field import Scalar
from src.shared.linalg import EchelonBasis, SparseVector, add_scaled

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FreeModule:
    """The free module P_{j_1} + ... + P_{j_r} (indices may repeat).

    Attributes:
        algebra: The algebra acted on.
        indices: Degrees of the free generators, in order.
    """

    algebra: IndexedAlgebra = field(repr=False, compare=False)
    indices: tuple[IndexElement, ...]

    @property
    def rank(self) -> int:
        """Number of free generators."""
        return len(self.indices)

    def offsets(self, d: IndexElement) -> tuple[int, ...]:
        """Block offsets of the ambient space at d, plus the total as last entry."""
        out = [0]
        for j in self.indices:
            out.append(out[-1] + self.algebra.dimension(j, d))
        return tuple(out)

    def dimension(self, d: IndexElement) -> int:
        """dim of the free module at degree d."""
        return self.offsets(d)[-1]


def _place(out: SparseVector, element: AlgebraElement, offset: int, c: Scalar) -> None:
    f = element.algebra.field
    add_scaled(f, out, {offset + k: x for k, x in element.coords}, c)


@dataclass(frozen=True)
class ModuleMap:
    """A map of free modules, acting by left multiplication on columns.

    Attributes:
        source: Free module (j_t)_t.
        target: Free module (j_l)_l.
        columns: columns[t][gi] lies in A_{target_gi, source_t}.

    Raises:
        DegreeMismatchError: If an entry sits in the wrong component.
    """

    source: FreeModule
    target: FreeModule
    columns: tuple[tuple[AlgebraElement, ...], ...]

    def __post_init__(self) -> None:
        if len(self.columns) != self.source.rank:
            raise DegreeMismatchError("one column per source generator is required")
        for t, column in enumerate(self.columns):
            if len(column) != self.target.rank:
                raise DegreeMismatchError(f"column {t} needs {self.target.rank} entries")
            for gi, entry in enumerate(column):
                if (entry.source, entry.target) != (
                    self.target.indices[gi],
                    self.source.indices[t],
                ):
                    raise DegreeMismatchError(
                        f"entry ({gi},{t}) must lie in the component from target "
                        f"generator {gi} to source generator {t}"
                    )

    def apply_vector(self, d: IndexElement, v: SparseVector) -> SparseVector:
        """Image at degree d of a source ambient vector, in target ambient coordinates."""
        algebra = self.source.algebra
        source_offsets = self.source.offsets(d)
        target_offsets = self.target.offsets(d)
        out: SparseVector = {}
        for pos, x in v.items():
            t = bisect.bisect_right(source_offsets, pos) - 1
            b = algebra.basis_element(self.source.indices[t], d, pos - source_offsets[t])
            for gi, entry in enumerate(self.columns[t]):
                if not entry.is_zero():
                    _place(out, entry * b, target_offsets[gi], x)
        return out


@dataclass(frozen=True)
class ModuleRelation:
    """One relation column: sum_l g_l * entries[l] = 0 at `degree`."""

    degree: IndexElement
    entries: tuple[AlgebraElement, ...]


@dataclass(frozen=True)
class ModuleComponent:
    """Exact data of M_d.

    Attributes:
        degree: d.
        offsets: Block offsets of the ambient space, total last.
        relations: Echelon basis of the relation subspace R_d.
        basis_columns: Non-pivot ambient columns, a basis of M_d.
    """

    degree: IndexElement
    offsets: tuple[int, ...]
    relations: EchelonBasis = field(repr=False, compare=False)
    basis_columns: tuple[int, ...]

    @property
    def ambient_dim(self) -> int:
        """dim of the free cover at d."""
        return self.offsets[-1]

    @property
    def dimension(self) -> int:
        """dim M_d."""
        return len(self.basis_columns)

    def reduce(self, v: SparseVector) -> SparseVector:
        """Normal form of an ambient vector."""
        return self.relations.reduce(v)

    def coordinates(self, v: SparseVector) -> SparseVector:
        """Coordinates of an ambient vector over the basis columns."""
        position = {c: k for k, c in enumerate(self.basis_columns)}
        return {position[c]: x for c, x in self.reduce(v).items()}

    def locate(self, pos: int) -> tuple[int, int]:
        """(generator, basis position inside its block) of an ambient column."""
        gi = bisect.bisect_right(self.offsets, pos) - 1
        return gi, pos - self.offsets[gi]


@dataclass(frozen=True)
class ModuleElement:
    """An element of M_d as a normal-form ambient vector."""

    module: ModulePresentation = field(repr=False, compare=False)
    degree: IndexElement
    coords: tuple[tuple[int, Scalar], ...]

    @property
    def vector(self) -> SparseVector:
        """Ambient coordinates."""
        return dict(self.coords)

    def is_zero(self) -> bool:
        """True for the zero element."""
        return not self.coords

    def __add__(self, other: ModuleElement) -> ModuleElement:
        if self.degree != other.degree:
            raise DegreeMismatchError("cannot add module elements of different degrees")
        out = self.vector
        add_scaled(self.module.algebra.field, out, other.vector, self.module.algebra.field.one())
        return self.module.element(self.degree, out)

    def scale(self, c: Scalar) -> ModuleElement:
        """Return c * self."""
        out: SparseVector = {}
        add_scaled(self.module.algebra.field, out, self.vector, c)
        return self.module.element(self.degree, out)

    def __mul__(self, a: AlgebraElement) -> ModuleElement:
        return self.module.act(self, a)

    def format(self) -> str:
        """Render as `g0*(x*y) + g1`."""
        parts: list[str] = []
        for gi, block in enumerate(self.module.blocks(self.degree, self.vector)):
            if block.is_zero():
                continue
            text = block.format()
            if text == "e":
                parts.append(f"g{gi}")
            elif " " in text or text.startswith("-"):
                parts.append(f"g{gi}*({text})")
            else:
                parts.append(f"g{gi}*{text}")
        return " + ".join(parts) if parts else "0"


class ModulePresentation:
    """M = coker(F' -> F), presented by cover generators and relation columns.

    Args:
        algebra: The algebra acting on the right.
        generators: Degrees j_l of the cover generators.
        relations: Relation columns.
        name: Display name.

    Raises:
        DegreeMismatchError: If a relation entry is in the wrong component.
    """

    def __init__(
        self,
        algebra: IndexedAlgebra,
        generators: Sequence[IndexElement],
        relations: Sequence[ModuleRelation] = (),
        *,
        name: str = "M",
    ) -> None:
        self.algebra = algebra
        self.generators: tuple[IndexElement, ...] = tuple(generators)
        self.relations: tuple[ModuleRelation, ...] = tuple(relations)
        self.name = name
        for j in self.generators:
            algebra.poset.check(j)
        for rel in self.relations:
            if len(rel.entries) != len(self.generators):
                raise DegreeMismatchError(f"relation of {name} needs one entry per generator")
            for gi, entry in enumerate(rel.entries):
                if (entry.source, entry.target) != (self.generators[gi], rel.degree):
                    raise DegreeMismatchError(
                        f"relation entry {gi} of {name} is not in the component from "
                        f"{algebra.poset.format_element(self.generators[gi])} to "
                        f"{algebra.poset.format_element(rel.degree)}"
                    )
        self._lock = threading.Lock()
        self._components: dict[IndexElement, ModuleComponent] = {}

    @classmethod
    def from_map(cls, f: ModuleMap, *, name: str = "M") -> ModulePresentation:
        """Return coker f."""
        relations = [
            ModuleRelation(f.source.indices[t], column) for t, column in enumerate(f.columns)
        ]
        return cls(f.target.algebra, f.target.indices, relations, name=name)

    @property
    def cover(self) -> FreeModule:
        """The free module on the generators."""
        return FreeModule(self.algebra, self.generators)

    def relation_map(self) -> ModuleMap:
        """The presentation map F' -> F."""
        source = FreeModule(self.algebra, tuple(r.degree for r in self.relations))
        return ModuleMap(source, self.cover, tuple(r.entries for r in self.relations))

    def component(self, d: IndexElement) -> ModuleComponent:
        """Exact component M_d (cached)."""
        cached = self._components.get(d)
        if cached is not None:
            return cached
        start = time.perf_counter()
        poset = self.algebra.poset
        offsets = self.cover.offsets(d)
        relations = EchelonBasis(self.algebra.field)
        one = self.algebra.field.one()
        for rel in self.relations:
            if not poset.leq(rel.degree, d):
                continue
            for b in self.algebra.basis_elements(rel.degree, d):
                row: SparseVector = {}
                for gi, entry in enumerate(rel.entries):
                    if not entry.is_zero():
                        _place(row, entry * b, offsets[gi], one)
                if row:
                    relations.add(row)
        pivots = set(relations.pivots)
        basis = tuple(c for c in range(offsets[-1]) if c not in pivots)
        computed = ModuleComponent(d, offsets, relations, basis)
        logger.debug(
            "module_component_computed",
            extra={
                "module": self.name,
                "degree": poset.format_element(d),
                "dimension": len(basis),
                "elapsed_ms": (time.perf_counter() - start) * 1000,
            },
        )
        with self._lock:
            return self._components.setdefault(d, computed)

    def dimension(self, d: IndexElement) -> int:
        """dim M_d."""
        return self.component(d).dimension

    def element(self, d: IndexElement, vector: SparseVector) -> ModuleElement:
        """Reduce an ambient vector at d to an element."""
        reduced = self.component(d).reduce(vector)
        return ModuleElement(self, d, tuple(sorted(reduced.items())))

    def zero(self, d: IndexElement) -> ModuleElement:
        """The zero element of M_d."""
        return ModuleElement(self, d, ())

    def generator(self, gi: int) -> ModuleElement:
        """The image of the l-th cover generator."""
        j = self.generators[gi]
        offset = self.cover.offsets(j)[gi]
        return self.element(j, {offset: self.algebra.field.one()})

    def basis(self, d: IndexElement) -> list[ModuleElement]:
        """Basis of M_d (unit vectors at the basis columns)."""
        one = self.algebra.field.one()
        return [ModuleElement(self, d, ((c, one),)) for c in self.component(d).basis_columns]

    def element_from_blocks(
        self, d: IndexElement, blocks: Sequence[AlgebraElement | None]
    ) -> ModuleElement:
        """Return sum_l g_l * blocks[l].

        Raises:
            DegreeMismatchError: If a block is not in A_{j_l, d}.
        """
        offsets = self.cover.offsets(d)
        out: SparseVector = {}
        for gi, block in enumerate(blocks):
            if block is None:
                continue
            if (block.source, block.target) != (self.generators[gi], d):
                raise DegreeMismatchError(f"block {gi} of {self.name} has the wrong degree")
            _place(out, block, offsets[gi], self.algebra.field.one())
        return self.element(d, out)

    def blocks(self, d: IndexElement, v: SparseVector) -> list[AlgebraElement]:
        """Split an ambient vector at d into its generator blocks."""
        offsets = self.cover.offsets(d)
        split: list[SparseVector] = [{} for _ in self.generators]
        for pos, x in v.items():
            gi = bisect.bisect_right(offsets, pos) - 1
            split[gi][pos - offsets[gi]] = x
        return [
            self.algebra.element(self.generators[gi], d, split[gi]) for gi in range(len(split))
        ]

    def act_vector(self, d: IndexElement, v: SparseVector, a: AlgebraElement) -> SparseVector:
        """Normal form of v * a for v at d and a in A_{d,e}.

        Raises:
            DegreeMismatchError: If a does not start at d.
        """
        if a.source != d:
            raise DegreeMismatchError("the algebra element must start at the element's degree")
        e = a.target
        source = self.component(d)
        target = self.component(e)
        out: SparseVector = {}
        for pos, x in v.items():
            gi, k = source.locate(pos)
            b = self.algebra.basis_element(self.generators[gi], d, k)
            _place(out, b * a, target.offsets[gi], x)
        return target.reduce(out)

    def act(self, m: ModuleElement, a: AlgebraElement) -> ModuleElement:
        """Return m * a."""
        reduced = self.act_vector(m.degree, m.vector, a)
        return ModuleElement(self, a.target, tuple(sorted(reduced.items())))

    def describe(self) -> str:
        """One-line summary for reports."""
        gens = " ".join(f"P{self.algebra.poset.format_element(j)}" for j in self.generators)
        return f"{self.name}: generators [{gens}], {len(self.relations)} relations"


def free_module(
    algebra: IndexedAlgebra, indices: Sequence[IndexElement], *, name: str = "F"
) -> ModulePresentation:
    """The free module on the given indices, with no relations."""
    return ModulePresentation(algebra, indices, (), name=name)


def zero_module(algebra: IndexedAlgebra, *, name: str = "0") -> ModulePresentation:
    """The zero module."""
    return ModulePresentation(algebra, (), (), name=name)


def direct_sum(
    first: ModulePresentation, second: ModulePresentation, *, name: str | None = None
) -> ModulePresentation:
    """Presentation of first + second, generators and relations side by side."""
    algebra = first.algebra
    gens = first.generators + second.generators
    relations: list[ModuleRelation] = []
    for rel in first.relations:
        pad = tuple(algebra.zero(j, rel.degree) for j in second.generators)
        relations.append(ModuleRelation(rel.degree, rel.entries + pad))
    for rel in second.relations:
        pad = tuple(algebra.zero(j, rel.degree) for j in first.generators)
        relations.append(ModuleRelation(rel.degree, pad + rel.entries))
    return ModulePresentation(
        algebra, gens, relations, name=name or f"{first.name}+{second.name}"
    )


def quotient_by_elements(
    module: ModulePresentation,
    elements: Sequence[ModuleElement],
    *,
    name: str | None = None,
) -> ModulePresentation:
    """M divided by the submodule generated by the given elements."""
    extra = [
        ModuleRelation(m.degree, tuple(module.blocks(m.degree, m.vector)))
        for m in elements
        if not m.is_zero()
    ]
    return ModulePresentation(
        module.algebra,
        module.generators,
        module.relations + tuple(extra),
        name=name or f"{module.name}/<{len(extra)}>",
    )


def simple_presentation(
    algebra: IndexedAlgebra,
    i: IndexElement,
    star: StarGenerators,
    *,
    name: str | None = None,
) -> ModulePresentation:
    """S_i = P_i / P_{i,>i}, presented by a generating set of the diagonal tail.

    Raises:
        StarGeneratorsUnavailable: If the generating set is not verified.
    """
    if not star.verified or star.index != i:
        raise StarGeneratorsUnavailable(
            f"no verified generating set of the diagonal tail at "
            f"{algebra.poset.format_element(i)}"
        )
    relations = [ModuleRelation(a.target, (a,)) for a in star.elements if not a.is_zero()]
    label = name or f"S{algebra.poset.format_element(i)}"
    return ModulePresentation(algebra, (i,), relations, name=label)
