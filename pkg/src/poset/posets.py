"""Locally finite directed posets: integer lattices, finite explicit orders, products.

Elements are plain hashable values: a lattice element is a tuple of ints,
a finite element is its string label, a product element is a pair. Every
comparison goes through the owning poset.
"""

from __future__ import annotations

import itertools
import logging
import re
from abc import ABC, abstractmethod
from collections.abc import Hashable, Iterable, Sequence
from typing import Any

import networkx as nx

from src.shared.errors import PosetMembershipError, PosetValidationError
from src.shared.outcome import CheckOutcome
from src.shared.types import PosetKind, Verdict

logger = logging.getLogger(__name__)

IndexElement = Hashable
Step = Any

_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_']*$")


class Poset(ABC):
    """A locally finite directed poset with a fixed linear extension."""

    kind: PosetKind

    @abstractmethod
    def contains(self, x: object) -> bool:
        """True if x is an element of this poset."""

    @abstractmethod
    def _leq(self, i: IndexElement, j: IndexElement) -> bool: ...

    @abstractmethod
    def sort_key(self, x: IndexElement) -> tuple[Any, ...]:
        """Key of the deterministic linear extension."""

    @abstractmethod
    def interval(self, i: IndexElement, j: IndexElement) -> list[IndexElement]:
        """Return [i, j] sorted by the linear extension (empty unless i <= j)."""

    @abstractmethod
    def upper_bound(self, i: IndexElement, j: IndexElement) -> IndexElement:
        """Return the canonical common upper bound of i and j."""

    @abstractmethod
    def format_element(self, x: IndexElement) -> str:
        """Render an element in input syntax."""

    @abstractmethod
    def parse_element(self, text: str) -> IndexElement:
        """Parse an element from input syntax.

        Raises:
            PosetMembershipError: If the text names no element.
        """

    @abstractmethod
    def raise_by(self, x: IndexElement, step: Step, times: int = 1) -> IndexElement:
        """Translate lattice coordinates by times * step; finite parts stay put."""

    @abstractmethod
    def unit_step(self) -> Step:
        """The all-ones step used for growing windows."""

    @abstractmethod
    def diagonal_successor(self, x: IndexElement) -> IndexElement | None:
        """Next element strictly above x along the diagonal, or None."""

    @abstractmethod
    def describe(self) -> str:
        """Render the poset declaration."""

    def check(self, x: IndexElement) -> None:
        """Raise unless x belongs to the poset.

        Raises:
            PosetMembershipError: If x is not an element.
        """
        if not self.contains(x):
            raise PosetMembershipError(f"{x!r} is not an element of {self.describe()}")

    def leq(self, i: IndexElement, j: IndexElement) -> bool:
        """True iff i <= j.

        Raises:
            PosetMembershipError: If either argument is not an element.
        """
        self.check(i)
        self.check(j)
        return self._leq(i, j)

    def lt(self, i: IndexElement, j: IndexElement) -> bool:
        """True iff i <= j and i != j."""
        return i != j and self.leq(i, j)

    def sort(self, elements: Iterable[IndexElement]) -> list[IndexElement]:
        """Sort elements along the linear extension."""
        return sorted(elements, key=self.sort_key)

    def validate(self) -> CheckOutcome:
        """Verify the poset axioms (structural unless overridden)."""
        return CheckOutcome(
            check="poset",
            verdict=Verdict.VERIFIED,
            subject=self.describe(),
            certificate={"structural": True},
        )


class IntegerLattice(Poset):
    """Z^r with the componentwise order.

    Args:
        rank: Number of coordinates, at least 1.
    """

    kind = PosetKind.INTEGER_LATTICE

    def __init__(self, rank: int) -> None:
        if rank < 1:
            raise PosetValidationError(f"lattice rank must be >= 1, got {rank}")
        self.rank = rank

    def __eq__(self, other: object) -> bool:
        return isinstance(other, IntegerLattice) and other.rank == self.rank

    def __hash__(self) -> int:
        return hash(("zlattice", self.rank))

    def contains(self, x: object) -> bool:
        return (
            isinstance(x, tuple)
            and len(x) == self.rank
            and all(isinstance(c, int) and not isinstance(c, bool) for c in x)
        )

    def _leq(self, i: IndexElement, j: IndexElement) -> bool:
        return all(a <= b for a, b in zip(i, j, strict=True))  # type: ignore[call-overload]

    def sort_key(self, x: IndexElement) -> tuple[Any, ...]:
        coords: tuple[int, ...] = x  # type: ignore[assignment]
        return (sum(coords), coords)

    def interval(self, i: IndexElement, j: IndexElement) -> list[IndexElement]:
        if not self.leq(i, j):
            return []
        lo: tuple[int, ...] = i  # type: ignore[assignment]
        hi: tuple[int, ...] = j  # type: ignore[assignment]
        ranges = [range(a, b + 1) for a, b in zip(lo, hi, strict=True)]
        return self.sort(itertools.product(*ranges))

    def upper_bound(self, i: IndexElement, j: IndexElement) -> IndexElement:
        self.check(i)
        self.check(j)
        return tuple(max(a, b) for a, b in zip(i, j, strict=True))  # type: ignore[call-overload]

    def difference(self, i: IndexElement, j: IndexElement) -> tuple[int, ...]:
        """Return j - i."""
        return tuple(b - a for a, b in zip(i, j, strict=True))  # type: ignore[call-overload]

    def format_element(self, x: IndexElement) -> str:
        return "(" + ",".join(str(c) for c in x) + ")"  # type: ignore[attr-defined]

    def parse_element(self, text: str) -> IndexElement:
        body = text.strip()
        if not (body.startswith("(") and body.endswith(")")):
            raise PosetMembershipError(f"expected a lattice element like (0,0), got {text!r}")
        parts = [p.strip() for p in body[1:-1].split(",")]
        try:
            coords = tuple(int(p) for p in parts)
        except ValueError as exc:
            raise PosetMembershipError(f"non-integer coordinate in {text!r}") from exc
        if len(coords) != self.rank:
            raise PosetMembershipError(
                f"{text!r} has {len(coords)} coordinates, poset has rank {self.rank}"
            )
        return coords

    def raise_by(self, x: IndexElement, step: Step, times: int = 1) -> IndexElement:
        coords: tuple[int, ...] = x  # type: ignore[assignment]
        return tuple(a + times * s for a, s in zip(coords, step, strict=True))

    def unit_step(self) -> Step:
        return (1,) * self.rank

    def diagonal_successor(self, x: IndexElement) -> IndexElement | None:
        return self.raise_by(x, self.unit_step())

    def describe(self) -> str:
        return f"zlattice {self.rank}"


class FiniteExplicitPoset(Poset):
    """A finite poset given by labels and generating relations a < b.

    The order is the reflexive-transitive closure of the relations. The
    linear extension is the topological order that prefers insertion
    order. Axiom violations are reported by `validate`, not raised here.

    Args:
        elements: Labels in insertion order.
        relations: Pairs (a, b) meaning a < b.

    Raises:
        PosetValidationError: If a relation names an unknown label.
    """

    kind = PosetKind.FINITE_EXPLICIT

    def __init__(self, elements: Sequence[str], relations: Sequence[tuple[str, str]]) -> None:
        if len(set(elements)) != len(elements):
            raise PosetValidationError("duplicate element label")
        self.elements: tuple[str, ...] = tuple(elements)
        self.relations: tuple[tuple[str, str], ...] = tuple(relations)
        graph = nx.DiGraph()
        graph.add_nodes_from(self.elements)
        for a, b in self.relations:
            if a not in graph or b not in graph:
                raise PosetValidationError(f"relation {a}<{b} names an unknown element")
            if a != b:
                graph.add_edge(a, b)
        self._graph = graph
        self._closure = nx.transitive_closure(graph, reflexive=False)
        position = {x: k for k, x in enumerate(self.elements)}
        if nx.is_directed_acyclic_graph(graph):
            order = list(nx.lexicographical_topological_sort(graph, key=position.__getitem__))
        else:
            order = list(self.elements)
        self._rank = {x: k for k, x in enumerate(order)}

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, FiniteExplicitPoset)
            and other.elements == self.elements
            and set(other._closure.edges) == set(self._closure.edges)
        )

    def __hash__(self) -> int:
        return hash(("finite", self.elements))

    def contains(self, x: object) -> bool:
        return isinstance(x, str) and x in self._rank

    def _leq(self, i: IndexElement, j: IndexElement) -> bool:
        return i == j or bool(self._closure.has_edge(i, j))

    def sort_key(self, x: IndexElement) -> tuple[Any, ...]:
        return (self._rank[x],)

    def ordered(self) -> list[str]:
        """All elements along the linear extension."""
        return sorted(self.elements, key=self._rank.__getitem__)

    def interval(self, i: IndexElement, j: IndexElement) -> list[IndexElement]:
        if not self.leq(i, j):
            return []
        return [d for d in self.ordered() if self._leq(i, d) and self._leq(d, j)]

    def upper_bound(self, i: IndexElement, j: IndexElement) -> IndexElement:
        self.check(i)
        self.check(j)
        for u in self.ordered():
            if self._leq(i, u) and self._leq(j, u):
                return u
        raise PosetValidationError(f"{i} and {j} have no common upper bound")

    def format_element(self, x: IndexElement) -> str:
        return str(x)

    def parse_element(self, text: str) -> IndexElement:
        label = text.strip()
        if label not in self._rank:
            raise PosetMembershipError(f"unknown element {text!r}")
        return label

    def raise_by(self, x: IndexElement, step: Step, times: int = 1) -> IndexElement:
        return x

    def unit_step(self) -> Step:
        return None

    def diagonal_successor(self, x: IndexElement) -> IndexElement | None:
        for u in self.ordered():
            if u != x and self._leq(x, u):
                return u
        return None

    def describe(self) -> str:
        rels = ", ".join(f"{a}<{b}" for a, b in self.relations)
        return "finite {" + ",".join(self.elements) + "} {" + rels + "}"

    def validate(self) -> CheckOutcome:
        """Exhaustively verify antisymmetry and directedness.

        Transitivity holds by construction (the order is a closure) and a
        finite poset is locally finite.

        Returns:
            Verified, or Refuted with the first failing pair.
        """
        subject = self.describe()
        if not nx.is_directed_acyclic_graph(self._graph):
            cycle = nx.find_cycle(self._graph)
            a, b = cycle[0][0], cycle[0][1]
            logger.info("poset_refuted", extra={"axiom": "antisymmetry", "pair": [a, b]})
            return CheckOutcome(
                check="poset",
                verdict=Verdict.REFUTED,
                subject=subject,
                certificate={"axiom": "antisymmetry", "witness": [a, b]},
            )
        order = self.ordered()
        for k, a in enumerate(order):
            for b in order[k + 1 :]:
                if not any(self._leq(a, u) and self._leq(b, u) for u in order):
                    logger.info("poset_refuted", extra={"axiom": "directed", "pair": [a, b]})
                    return CheckOutcome(
                        check="poset",
                        verdict=Verdict.REFUTED,
                        subject=subject,
                        certificate={"axiom": "directed", "witness": [a, b]},
                    )
        return CheckOutcome(
            check="poset",
            verdict=Verdict.VERIFIED,
            subject=subject,
            certificate={"elements": len(order), "linear_extension": order},
        )


class ProductPoset(Poset):
    """Direct product of two posets with the componentwise order."""

    kind = PosetKind.PRODUCT

    def __init__(self, left: Poset, right: Poset) -> None:
        self.left = left
        self.right = right

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, ProductPoset)
            and other.left == self.left
            and other.right == self.right
        )

    def __hash__(self) -> int:
        return hash(("product", self.left, self.right))

    def contains(self, x: object) -> bool:
        return (
            isinstance(x, tuple)
            and len(x) == 2
            and self.left.contains(x[0])
            and self.right.contains(x[1])
        )

    def _leq(self, i: IndexElement, j: IndexElement) -> bool:
        a: tuple[Any, Any] = i  # type: ignore[assignment]
        b: tuple[Any, Any] = j  # type: ignore[assignment]
        return self.left._leq(a[0], b[0]) and self.right._leq(a[1], b[1])

    def sort_key(self, x: IndexElement) -> tuple[Any, ...]:
        pair: tuple[Any, Any] = x  # type: ignore[assignment]
        return (self.left.sort_key(pair[0]), self.right.sort_key(pair[1]))

    def interval(self, i: IndexElement, j: IndexElement) -> list[IndexElement]:
        if not self.leq(i, j):
            return []
        a: tuple[Any, Any] = i  # type: ignore[assignment]
        b: tuple[Any, Any] = j  # type: ignore[assignment]
        pairs = itertools.product(
            self.left.interval(a[0], b[0]), self.right.interval(a[1], b[1])
        )
        return self.sort(pairs)

    def upper_bound(self, i: IndexElement, j: IndexElement) -> IndexElement:
        self.check(i)
        self.check(j)
        a: tuple[Any, Any] = i  # type: ignore[assignment]
        b: tuple[Any, Any] = j  # type: ignore[assignment]
        return (self.left.upper_bound(a[0], b[0]), self.right.upper_bound(a[1], b[1]))

    def format_element(self, x: IndexElement) -> str:
        pair: tuple[Any, Any] = x  # type: ignore[assignment]
        return f"{self.left.format_element(pair[0])}|{self.right.format_element(pair[1])}"

    def parse_element(self, text: str) -> IndexElement:
        body = text.strip()
        for cut in [k for k, ch in enumerate(body) if ch == "|"]:
            try:
                left = self.left.parse_element(body[:cut])
                right = self.right.parse_element(body[cut + 1 :])
            except PosetMembershipError:
                continue
            return (left, right)
        raise PosetMembershipError(f"expected a product element like (0)|a, got {text!r}")

    def raise_by(self, x: IndexElement, step: Step, times: int = 1) -> IndexElement:
        pair: tuple[Any, Any] = x  # type: ignore[assignment]
        return (
            self.left.raise_by(pair[0], step[0], times),
            self.right.raise_by(pair[1], step[1], times),
        )

    def unit_step(self) -> Step:
        return (self.left.unit_step(), self.right.unit_step())

    def diagonal_successor(self, x: IndexElement) -> IndexElement | None:
        pair: tuple[Any, Any] = x  # type: ignore[assignment]
        left = self.left.diagonal_successor(pair[0])
        right = self.right.diagonal_successor(pair[1])
        if left is None and right is None:
            return None
        return (pair[0] if left is None else left, pair[1] if right is None else right)

    def describe(self) -> str:
        return f"product ({self.left.describe()}) ({self.right.describe()})"

    def validate(self) -> CheckOutcome:
        """Verified iff both factors verify."""
        left = self.left.validate()
        right = self.right.validate()
        verdict = Verdict.VERIFIED if left.passed and right.passed else Verdict.REFUTED
        return CheckOutcome(
            check="poset", verdict=verdict, subject=self.describe(), items=[left, right]
        )


def is_name(text: str) -> bool:
    """True if text is a valid element or identifier name."""
    return bool(_NAME.match(text))


_FINITE = re.compile(r"^\{([^{}]*)\}\s*(?:\{([^{}]*)\})?$")


def _groups(text: str) -> list[str]:
    """Top-level parenthesized groups of `(A) (B)`, without the outer parentheses."""
    groups: list[str] = []
    depth = 0
    start = 0
    for k, ch in enumerate(text):
        if ch == "(":
            if depth == 0:
                start = k + 1
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise PosetValidationError(f"unbalanced parentheses in {text!r}")
            if depth == 0:
                groups.append(text[start:k])
        elif depth == 0 and not ch.isspace():
            raise PosetValidationError(f"expected parenthesized factors, got {text!r}")
    if depth != 0:
        raise PosetValidationError(f"unbalanced parentheses in {text!r}")
    return groups


def parse_poset(text: str) -> Poset:
    """Build a poset from its declaration, the inverse of `describe`.

    Forms: `zlattice 2`, `finite {a,b,c} {a<b, b<c}`,
    `product (zlattice 1) (finite {a,b} {a<b})`.

    Raises:
        PosetValidationError: On a malformed declaration or unknown label.
    """
    keyword, _, rest = text.strip().partition(" ")
    rest = rest.strip()
    if keyword == PosetKind.INTEGER_LATTICE.value:
        if not rest.isdigit():
            raise PosetValidationError(f"zlattice needs a rank, got {rest!r}")
        return IntegerLattice(int(rest))
    if keyword == PosetKind.FINITE_EXPLICIT.value:
        match = _FINITE.match(rest)
        if match is None:
            raise PosetValidationError("expected `finite {a,b,...} {a<b, ...}`")
        elements = [e.strip() for e in match.group(1).split(",") if e.strip()]
        if not elements or not all(is_name(e) for e in elements):
            raise PosetValidationError(f"bad element list {match.group(1)!r}")
        relations: list[tuple[str, str]] = []
        for raw in (match.group(2) or "").split(","):
            if not raw.strip():
                continue
            a, lt, b = raw.partition("<")
            if not lt:
                raise PosetValidationError(f"bad relation {raw.strip()!r}, expected a<b")
            relations.append((a.strip(), b.strip()))
        return FiniteExplicitPoset(elements, relations)
    if keyword == PosetKind.PRODUCT.value:
        factors = _groups(rest)
        if len(factors) != 2:
            raise PosetValidationError(f"product needs two factors, got {len(factors)}")
        return ProductPoset(parse_poset(factors[0]), parse_poset(factors[1]))
    raise PosetValidationError(f"unknown poset kind {keyword!r}")
