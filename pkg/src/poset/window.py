"""Finite order-convex windows that bound every semi-decidable computation."""

from __future__ import annotations

import logging
from collections.abc import Iterable
from dataclasses import dataclass, field

from src.config.settings import get_settings
from src.poset.posets import IndexElement, IntegerLattice, Poset, ProductPoset, Step
from src.shared.errors import PosetMembershipError, ResourceLimitError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Window:
    """A finite order-convex subset of a poset.

    Box windows remember their corners so they can grow; explicit windows
    do not.

    Attributes:
        poset: Owning poset.
        elements: Members sorted along the linear extension.
        lo: Lower corner of a box window.
        hi: Upper corner of a box window.
    """

    poset: Poset
    elements: tuple[IndexElement, ...]
    lo: IndexElement | None = None
    hi: IndexElement | None = None
    _members: frozenset[IndexElement] = field(
        default=frozenset(), repr=False, compare=False
    )

    def __post_init__(self) -> None:
        object.__setattr__(self, "_members", frozenset(self.elements))

    @classmethod
    def box(
        cls,
        poset: Poset,
        lo: IndexElement,
        hi: IndexElement,
        *,
        limit: int | None = None,
    ) -> Window:
        """Return the interval window [lo, hi].

        Args:
            poset: Owning poset.
            lo: Lower corner.
            hi: Upper corner, lo <= hi.
            limit: Element ceiling (defaults to settings.window_limit).

        Returns:
            The box window.

        Raises:
            PosetMembershipError: If lo is not below hi.
            ResourceLimitError: If the box exceeds the element ceiling.
        """
        if not poset.leq(lo, hi):
            raise PosetMembershipError(
                f"window corners {poset.format_element(lo)} and "
                f"{poset.format_element(hi)} are not ordered"
            )
        ceiling = limit if limit is not None else get_settings().window_limit
        _check_box_size(poset, lo, hi, ceiling)
        return cls(poset, tuple(poset.interval(lo, hi)), lo, hi)

    @classmethod
    def from_elements(cls, poset: Poset, elements: Iterable[IndexElement]) -> Window:
        """Return an explicit window, checking order-convexity.

        Raises:
            PosetMembershipError: If the set is not order-convex.
        """
        members = poset.sort(set(elements))
        member_set = set(members)
        for i in members:
            for j in members:
                if poset.leq(i, j):
                    missing = [d for d in poset.interval(i, j) if d not in member_set]
                    if missing:
                        raise PosetMembershipError(
                            f"window is not order-convex: {poset.format_element(missing[0])} "
                            f"lies between {poset.format_element(i)} and "
                            f"{poset.format_element(j)}"
                        )
        return cls(poset, tuple(members))

    @property
    def size(self) -> int:
        """Number of elements."""
        return len(self.elements)

    @property
    def is_box(self) -> bool:
        """True for interval windows."""
        return self.lo is not None and self.hi is not None

    def contains(self, x: IndexElement) -> bool:
        """True if x lies in the window."""
        return x in self._members

    def bounds(self) -> list[str]:
        """Formatted corners (box) or formatted members (explicit)."""
        if self.is_box:
            return [self.poset.format_element(self.lo), self.poset.format_element(self.hi)]
        return [self.poset.format_element(x) for x in self.elements]

    def label(self) -> str:
        """Render as `lo..hi` for boxes."""
        if self.is_box:
            lo, hi = self.bounds()
            return f"{lo}..{hi}"
        return "{" + ", ".join(self.bounds()) + "}"

    def strict_upper_set(self, d: IndexElement) -> list[IndexElement]:
        """{ j in window : j > d } in window order."""
        self.poset.check(d)
        return [j for j in self.elements if j != d and self.poset.leq(d, j)]

    def weak_upper_set(self, d: IndexElement) -> list[IndexElement]:
        """{ j in window : j >= d } in window order."""
        self.poset.check(d)
        return [j for j in self.elements if self.poset.leq(d, j)]

    def is_maximal(self, d: IndexElement) -> bool:
        """True if no window element lies strictly above d."""
        return not any(j != d and self.poset.leq(d, j) for j in self.elements)

    def non_maximal(self) -> list[IndexElement]:
        """Elements with something strictly above them in the window."""
        return [d for d in self.elements if not self.is_maximal(d)]

    def grow(self, k: int, step: Step | None = None) -> Window:
        """Return the box [lo, hi + k * step].

        Raises:
            PosetMembershipError: If the window is not a box.
        """
        if not self.is_box:
            if k == 0:
                return self
            raise PosetMembershipError("only box windows can grow")
        s = self.poset.unit_step() if step is None else step
        return Window.box(self.poset, self.lo, self.poset.raise_by(self.hi, s, k))

    def shrink(self, k: int, step: Step | None = None) -> Window:
        """Return the box [lo, hi - k * step], clamped at lo.

        Raises:
            PosetMembershipError: If the window is not a box.
        """
        if not self.is_box:
            raise PosetMembershipError("only box windows can shrink")
        s = self.poset.unit_step() if step is None else step
        hi = self.poset.raise_by(self.hi, s, -k)
        if not self.poset.leq(self.lo, hi):
            hi = self.lo
        return Window.box(self.poset, self.lo, hi)

    def growth_chain(self, length: int, step: Step | None = None) -> list[Window]:
        """Nested boxes [lo, hi + k * step] for k = 0 .. length - 1."""
        return [self.grow(k, step) for k in range(length)]

    def shrink_chain(self, length: int, step: Step | None = None) -> list[Window]:
        """Nested boxes ending at this window, smallest first."""
        return [self.shrink(k, step) for k in reversed(range(length))]

    def diagonal_chain(self, length: int) -> list[IndexElement]:
        """Increasing chain of non-maximal elements along the diagonal.

        Starts at the first element and steps with `diagonal_successor`; may
        come back shorter than `length` in a small window.
        """
        chain: list[IndexElement] = []
        current: IndexElement | None = self.elements[0] if self.elements else None
        while current is not None and len(chain) < length:
            if not self.contains(current) or self.is_maximal(current):
                break
            chain.append(current)
            current = self.poset.diagonal_successor(current)
        return chain

    def middle(self) -> IndexElement:
        """The middle element of the linear extension."""
        return self.elements[len(self.elements) // 2]


def _check_box_size(poset: Poset, lo: IndexElement, hi: IndexElement, ceiling: int) -> None:
    size = _box_size(poset, lo, hi)
    if size > ceiling:
        logger.warning("window_limit_exceeded", extra={"size": size, "ceiling": ceiling})
        raise ResourceLimitError("window", size, ceiling)


def _box_size(poset: Poset, lo: IndexElement, hi: IndexElement) -> int:
    if isinstance(poset, IntegerLattice):
        size = 1
        for a, b in zip(lo, hi, strict=True):  # type: ignore[call-overload]
            size *= b - a + 1
        return size
    if isinstance(poset, ProductPoset):
        return _box_size(poset.left, lo[0], hi[0]) * _box_size(  # type: ignore[index]
            poset.right, lo[1], hi[1]  # type: ignore[index]
        )
    return len(poset.interval(lo, hi))
