"""Submodules materialized on a window: tails, kernels, closures.

A tail has infinitely many components over Z^r, so submodules only
ever exist on a finite window. Every subspace is stored as an echelon
basis of normal-form ambient vectors of the parent's component.
"""

from __future__ import annotations

import logging
from collections.abc import Callable
from dataclasses import dataclass, field
from functools import partial
from typing import Protocol

from src.gradedmod.modules import ModuleMap, ModulePresentation, free_module
from src.poset.posets import IndexElement
from src.poset.window import Window
from src.shared.field import FieldSpec
from src.shared.linalg import EchelonBasis, SparseVector, kernel_basis

logger = logging.getLogger(__name__)

Action = Callable[[SparseVector], SparseVector]


class GradedFamily(Protocol):
    """Subspaces indexed by a window with the generator action between them."""

    @property
    def window(self) -> Window:
        """Window the family lives on."""
        ...

    @property
    def field(self) -> FieldSpec:
        """Coefficient field."""
        ...

    def space(self, d: IndexElement) -> EchelonBasis:
        """The subspace at degree d."""
        ...

    def actions(self, d: IndexElement) -> list[tuple[IndexElement, Action]]:
        """(target degree, linear map) for each algebra generator leaving d."""
        ...

    def describe(self, d: IndexElement, v: SparseVector) -> str:
        """Render a vector at degree d."""
        ...


@dataclass
class SubmoduleInWindow:
    """A submodule of a presented module, restricted to a window.

    Attributes:
        module: Parent module.
        window: Window the subspaces live on.
        spaces: Subspace of the parent component per degree (absent = zero).
    """

    module: ModulePresentation
    window: Window
    spaces: dict[IndexElement, EchelonBasis] = field(default_factory=dict)

    @property
    def field(self) -> FieldSpec:
        """Coefficient field."""
        return self.module.algebra.field

    def space(self, d: IndexElement) -> EchelonBasis:
        """The subspace at d (empty outside the stored degrees)."""
        found = self.spaces.get(d)
        return found if found is not None else EchelonBasis(self.field)

    def dimension(self, d: IndexElement) -> int:
        """dim of the subspace at d."""
        return self.space(d).rank

    def dimensions(self) -> dict[IndexElement, int]:
        """Dimension at every window degree."""
        return {d: self.dimension(d) for d in self.window.elements}

    def actions(self, d: IndexElement) -> list[tuple[IndexElement, Action]]:
        """Right multiplication by each generator of the maximal ideal at d."""
        out: list[tuple[IndexElement, Action]] = []
        for a in self.module.algebra.generator_targets(d):
            out.append((a.target, partial(self.module.act_vector, d, a=a)))
        return out

    def describe(self, d: IndexElement, v: SparseVector) -> str:
        """Render a vector as a module element."""
        return self.module.element(d, v).format()

    def contains(self, d: IndexElement, v: SparseVector) -> bool:
        """True if the normal form of v lies in the subspace at d."""
        return self.space(d).contains(self.module.component(d).reduce(v))

    def same_as(self, other: SubmoduleInWindow) -> bool:
        """True if both families agree at every degree of this window."""
        for d in self.window.elements:
            mine, theirs = self.space(d), other.space(d)
            if mine.rank != theirs.rank:
                return False
            if not all(mine.contains(row) for row in theirs.rows()):
                return False
        return True

    def is_action_closed(self) -> bool:
        """True if generator images of every subspace stay inside the family."""
        for d in self.window.elements:
            for t, act in self.actions(d):
                if not self.window.contains(t):
                    continue
                target = self.space(t)
                if not all(target.contains(act(row)) for row in self.space(d).rows()):
                    return False
        return True


def _full_space(module: ModulePresentation, d: IndexElement) -> EchelonBasis:
    space = EchelonBasis(module.algebra.field)
    for m in module.basis(d):
        space.add(m.vector)
    return space


def tail(
    module: ModulePresentation, d: IndexElement, strict: bool, window: Window
) -> SubmoduleInWindow:
    """M_{>d} (strict) or M_{>=d} (weak) on a window.

    Args:
        module: The module.
        d: Cut degree (need not lie in the window).
        strict: Strict tail when True.
        window: Window to materialize on.

    Returns:
        The full component at every window degree j > d (or j >= d), zero elsewhere.
    """
    poset = module.algebra.poset
    poset.check(d)
    spaces: dict[IndexElement, EchelonBasis] = {}
    for j in window.elements:
        if poset.leq(d, j) and not (strict and j == d):
            spaces[j] = _full_space(module, j)
    return SubmoduleInWindow(module, window, spaces)


def whole(module: ModulePresentation, window: Window) -> SubmoduleInWindow:
    """The restriction of M itself to a window."""
    return SubmoduleInWindow(
        module, window, {j: _full_space(module, j) for j in window.elements}
    )


def kernel_in_window(
    f: ModuleMap,
    window: Window,
    *,
    target_module: ModulePresentation | None = None,
) -> SubmoduleInWindow:
    """Degreewise kernel of a map of free modules on a window.

    Args:
        f: The map F' -> F.
        window: Window to compute on.
        target_module: When given, images are taken modulo its relations
            (the map then reads F' -> M with M presented over F).

    Returns:
        ker f as a submodule of the free module F'.
    """
    algebra = f.source.algebra
    source = free_module(algebra, f.source.indices, name="ker")
    spaces: dict[IndexElement, EchelonBasis] = {}
    one = algebra.field.one()
    for d in window.elements:
        width = f.source.dimension(d)
        if width == 0:
            continue
        columns = [f.apply_vector(d, {pos: one}) for pos in range(width)]
        if target_module is not None:
            component = target_module.component(d)
            columns = [component.reduce(c) for c in columns]
        space = EchelonBasis(algebra.field)
        for vec in kernel_basis(algebra.field, columns):
            space.add(vec)
        if space.rank:
            spaces[d] = space
    return SubmoduleInWindow(source, window, spaces)


def quotient_component(module: ModulePresentation, d_cut: IndexElement, j: IndexElement) -> int:
    """dim (M / M_{>d_cut})_j: M_j unless j > d_cut, then 0."""
    if module.algebra.poset.lt(d_cut, j):
        return 0
    return module.dimension(j)
