"""Degree-zero module maps between finitely presented modules.

A map M -> N is fixed by the images of M's cover generators (generator
at j goes to an element of N_j). It is well defined exactly when every
relation column of M maps to zero, and all those constraints sit at the
finitely many relation degrees, so Hom is one finite exact linear system.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from typing import Any, cast

from src.gradedmod.modules import ModuleElement, ModulePresentation
from src.shared.errors import DegreeMismatchError
from src.shared.linalg import EchelonBasis, SparseVector, add_scaled, kernel_basis

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HomMap:
    """A module map given by the images of the source generators.

    Attributes:
        source: Domain.
        target: Codomain.
        images: images[l] lies in target at source.generators[l].
    """

    source: ModulePresentation = field(compare=False)
    target: ModulePresentation = field(compare=False)
    images: tuple[ModuleElement, ...]

    def __post_init__(self) -> None:
        if len(self.images) != len(self.source.generators):
            raise DegreeMismatchError("one image per source generator is required")
        for j, image in zip(self.source.generators, self.images, strict=True):
            if image.degree != j:
                raise DegreeMismatchError("generator images must keep their degree")

    @classmethod
    def identity(cls, module: ModulePresentation) -> HomMap:
        """The identity map of a module."""
        gens = tuple(module.generator(k) for k in range(len(module.generators)))
        return cls(module, module, gens)

    @classmethod
    def zero(cls, source: ModulePresentation, target: ModulePresentation) -> HomMap:
        """The zero map."""
        return cls(source, target, tuple(target.zero(j) for j in source.generators))

    def apply(self, m: ModuleElement) -> ModuleElement:
        """Image of an element of the source.

        Raises:
            DegreeMismatchError: If m does not belong to the source.
        """
        if m.module is not self.source:
            raise DegreeMismatchError("element does not belong to the map's source")
        d = m.degree
        out: SparseVector = {}
        f = self.target.algebra.field
        for k, block in enumerate(self.source.blocks(d, m.vector)):
            if block.is_zero():
                continue
            image = self.target.act_vector(block.source, self.images[k].vector, block)
            add_scaled(f, out, image, f.one())
        return self.target.element(d, out)

    def then(self, other: HomMap) -> HomMap:
        """The composite: first self, then other."""
        if other.source is not self.target:
            raise DegreeMismatchError("maps do not compose")
        return HomMap(self.source, other.target, tuple(other.apply(m) for m in self.images))

    def vector(self) -> SparseVector:
        """All image vectors concatenated in target ambient coordinates."""
        out: SparseVector = {}
        offset = 0
        for j, image in zip(self.source.generators, self.images, strict=True):
            for pos, x in image.coords:
                out[offset + pos] = x
            offset += self.target.component(j).ambient_dim
        return out

    def is_zero(self) -> bool:
        """True for the zero map."""
        return all(m.is_zero() for m in self.images)

    def format(self) -> str:
        """Render as `g0 -> ..., g1 -> ...`."""
        return ", ".join(f"g{k} -> {m.format()}" for k, m in enumerate(self.images))


@dataclass
class HomSpace:
    """Hom(M, N) with a fixed basis.

    Attributes:
        source: M.
        target: N.
        basis: Basis maps.
    """

    source: ModulePresentation
    target: ModulePresentation
    basis: list[HomMap]
    _echelon: EchelonBasis = field(init=False, repr=False)

    def __post_init__(self) -> None:
        self._echelon = EchelonBasis(self.source.algebra.field, track=True)
        for k, phi in enumerate(self.basis):
            self._echelon.add(phi.vector(), tag=k)

    @property
    def dimension(self) -> int:
        """dim Hom(M, N)."""
        return len(self.basis)

    def to_dict(self) -> dict[str, Any]:
        """JSON-ready summary with the basis maps rendered."""
        return {
            "source": self.source.name,
            "target": self.target.name,
            "dimension": self.dimension,
            "basis": [phi.format() for phi in self.basis],
        }

    def express(self, phi: HomMap) -> SparseVector | None:
        """Coordinates of a map over the basis, or None if it is not in the space."""
        combo = self._echelon.express(phi.vector())
        if combo is None:
            return None
        return {cast(int, k): x for k, x in combo.items()}

    def combination(self, coords: SparseVector) -> HomMap:
        """The map sum_k coords[k] * basis[k]."""
        f = self.source.algebra.field
        images: list[ModuleElement] = []
        for n, j in enumerate(self.source.generators):
            out: SparseVector = {}
            for k, c in coords.items():
                add_scaled(f, out, self.basis[k].images[n].vector, c)
            images.append(self.target.element(j, out))
        return HomMap(self.source, self.target, tuple(images))


def hom_space(source: ModulePresentation, target: ModulePresentation) -> HomSpace:
    """Solve for all degree-zero maps source -> target.

    Args:
        source: M, finitely presented.
        target: N, over the same algebra.

    Returns:
        Hom(M, N) with a basis read off the kernel of the constraint system.

    Raises:
        DegreeMismatchError: If the modules live over different algebras.
    """
    if source.algebra is not target.algebra:
        raise DegreeMismatchError("modules live over different algebras")
    start = time.perf_counter()
    f = target.algebra.field
    unknowns: list[tuple[int, int]] = []
    for n, j in enumerate(source.generators):
        for col in target.component(j).basis_columns:
            unknowns.append((n, col))
    offsets: list[int] = []
    width = 0
    for rel in source.relations:
        offsets.append(width)
        width += target.component(rel.degree).ambient_dim
    columns: list[SparseVector] = []
    for n, col in unknowns:
        column: SparseVector = {}
        j = source.generators[n]
        for t, rel in enumerate(source.relations):
            entry = rel.entries[n]
            if entry.is_zero():
                continue
            image = target.act_vector(j, {col: f.one()}, entry)
            add_scaled(f, column, {offsets[t] + p: x for p, x in image.items()}, f.one())
        columns.append(column)
    basis: list[HomMap] = []
    for kernel_vector in kernel_basis(f, columns):
        blocks: list[SparseVector] = [{} for _ in source.generators]
        for u, x in kernel_vector.items():
            n, col = unknowns[u]
            blocks[n][col] = x
        images = tuple(
            target.element(j, blocks[n]) for n, j in enumerate(source.generators)
        )
        basis.append(HomMap(source, target, images))
    logger.info(
        "hom_solved",
        extra={
            "source": source.name,
            "target": target.name,
            "unknowns": len(unknowns),
            "dimension": len(basis),
            "elapsed_ms": (time.perf_counter() - start) * 1000,
        },
    )
    return HomSpace(source, target, basis)
