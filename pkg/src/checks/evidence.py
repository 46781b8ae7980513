"""Typed replay evidence attached to CheckOutcome.evidence."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field

from src.algebra.base import IndexedAlgebra
from src.gradedmod.generation import GeneratorReport
from src.gradedmod.modules import ModuleMap, ModulePresentation
from src.gradedmod.submodules import GradedFamily
from src.poset.posets import IndexElement
from src.poset.window import Window


@dataclass
class KernelEvidence:
    """Kernel dimensions of a trial map on a window."""

    trial_map: ModuleMap
    window: Window
    dimensions: dict[IndexElement, int]


@dataclass
class GenerationEvidence:
    """A generator report together with the family it claims to generate."""

    family: GradedFamily
    report: GeneratorReport
    chain: Sequence[Window]
    profile: list[int] = field(default_factory=list)
    kernel: KernelEvidence | None = None


@dataclass
class StrongIndexEvidence:
    """A triple i < d < u and the basis position of A_{iu} outside the product span."""

    algebra: IndexedAlgebra
    i: IndexElement
    d: IndexElement
    u: IndexElement
    witness: int


@dataclass
class ConnectedEvidence:
    """The endomorphism dimension of one family member."""

    module: ModulePresentation
    dimension: int
