"""Window torsion: elements killed by every product landing strictly above a bound.

An element m of M_i is window-torsion with bound d (d non-maximal in the
window) when m * A_{ij} = 0 for every window degree j > d. This is window
evidence only; for modules that are upper-bounded by construction it is
exact.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from typing import Any

from src.gradedmod.modules import ModulePresentation
from src.poset.posets import IndexElement
from src.poset.window import Window
from src.shared.linalg import EchelonBasis, SparseVector, kernel_basis

logger = logging.getLogger(__name__)


@dataclass
class TorsionDirection:
    """A torsion direction and the first bound that witnessed it."""

    degree: IndexElement
    vector: SparseVector
    bound: IndexElement


@dataclass
class TorsionReport:
    """Window-torsion subspaces of a module.

    Attributes:
        module: The module.
        window: Window used.
        spaces: Torsion subspace per degree (absent = zero).
        directions: Basis directions with their witnessing bounds.
    """

    module: ModulePresentation
    window: Window
    spaces: dict[IndexElement, EchelonBasis] = field(default_factory=dict)
    directions: list[TorsionDirection] = field(default_factory=list)

    def dimension(self, d: IndexElement) -> int:
        """dim of the torsion subspace at d."""
        space = self.spaces.get(d)
        return space.rank if space is not None else 0

    @property
    def total(self) -> int:
        """Total torsion dimension on the window."""
        return sum(s.rank for s in self.spaces.values())

    def to_dict(self) -> dict[str, Any]:
        """JSON-ready summary."""
        poset = self.window.poset
        return {
            "module": self.module.name,
            "window": self.window.bounds(),
            "total": self.total,
            "directions": [
                {
                    "degree": poset.format_element(t.degree),
                    "element": self.module.element(t.degree, t.vector).format(),
                    "bound": poset.format_element(t.bound),
                }
                for t in self.directions
            ],
        }


class ForwardImages:
    """Images m_k * b of basis vectors of M_i under basis elements of A_{ij}."""

    def __init__(self, module: ModulePresentation, i: IndexElement) -> None:
        self.module = module
        self.i = i
        self.basis = module.basis(i)
        self._cache: dict[IndexElement, list[list[SparseVector]]] = {}

    def at(self, j: IndexElement) -> list[list[SparseVector]]:
        cached = self._cache.get(j)
        if cached is not None:
            return cached
        products = self.module.algebra.basis_elements(self.i, j)
        images = [
            [self.module.act_vector(self.i, m.vector, b) for b in products] for m in self.basis
        ]
        self._cache[j] = images
        return images


def _torsion_at(
    forward: ForwardImages, d: IndexElement, window: Window
) -> list[SparseVector]:
    module = forward.module
    poset = module.algebra.poset
    if not forward.basis:
        return []
    columns: list[SparseVector] = [{} for _ in forward.basis]
    offset = 0
    for j in window.elements:
        if not (poset.lt(d, j) and poset.leq(forward.i, j)):
            continue
        width = module.component(j).ambient_dim
        images = forward.at(j)
        for k, per_b in enumerate(images):
            for n, vec in enumerate(per_b):
                base = offset + n * width
                for pos, x in vec.items():
                    columns[k][base + pos] = x
        offset += width * (len(images[0]) if images else 0)
    out: list[SparseVector] = []
    for coeffs in kernel_basis(module.algebra.field, columns):
        out.append({forward.basis[k].coords[0][0]: x for k, x in coeffs.items()})
    return out


def torsion_subspace(
    module: ModulePresentation,
    i: IndexElement,
    d: IndexElement,
    window: Window,
    *,
    forward: ForwardImages | None = None,
) -> EchelonBasis:
    """{ m in M_i : m * A_{ij} = 0 for every window degree j > d }."""
    images = forward if forward is not None else ForwardImages(module, i)
    space = EchelonBasis(module.algebra.field)
    for v in _torsion_at(images, d, window):
        space.add(v)
    return space


def torsion_elements(module: ModulePresentation, window: Window) -> TorsionReport:
    """Window-torsion subspace at every degree, with first witnessing bounds.

    Bounds are tried in the window's linear extension; a direction is
    credited to the first bound that adds it to the running sum.
    """
    start = time.perf_counter()
    report = TorsionReport(module, window)
    bounds = window.non_maximal()
    for i in window.elements:
        forward = ForwardImages(module, i)
        if not forward.basis:
            continue
        running = EchelonBasis(module.algebra.field)
        for d in bounds:
            for v in _torsion_at(forward, d, window):
                if running.add(v):
                    report.directions.append(TorsionDirection(i, v, d))
        if running.rank:
            report.spaces[i] = running
    logger.info(
        "torsion_computed",
        extra={
            "module": module.name,
            "window": window.label(),
            "total": report.total,
            "elapsed_ms": (time.perf_counter() - start) * 1000,
        },
    )
    return report
