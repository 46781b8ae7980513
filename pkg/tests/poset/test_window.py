"""Tests for order-convex windows."""

import pytest

from src.poset.posets import FiniteExplicitPoset, IntegerLattice, ProductPoset
from src.poset.window import Window
from src.shared.errors import PosetMembershipError, ResourceLimitError


class TestBox:
    """Interval windows."""

    def test_elements_in_linear_extension(self, box22: Window) -> None:
        """A 3x3 box lists its elements by degree."""
        assert box22.elements == (
            (0, 0), (0, 1), (1, 0), (0, 2), (1, 1), (2, 0), (1, 2), (2, 1), (2, 2),
        )
        assert box22.size == 9
        assert box22.middle() == (1, 1)

    def test_label(self, box22: Window) -> None:
        """Boxes render as `lo..hi`."""
        assert box22.label() == "(0,0)..(2,2)"
        assert box22.bounds() == ["(0,0)", "(2,2)"]

    def test_unordered_corners(self, lattice2: IntegerLattice) -> None:
        """The lower corner must lie below the upper one."""
        with pytest.raises(PosetMembershipError):
            Window.box(lattice2, (1, 0), (0, 1))

    def test_window_ceiling(self, lattice2: IntegerLattice) -> None:
        """A box over the ceiling raises before enumeration."""
        with pytest.raises(ResourceLimitError) as info:
            Window.box(lattice2, (0, 0), (2, 2), limit=5)
        assert (info.value.limit, info.value.value, info.value.ceiling) == ("window", 9, 5)

    def test_product_box(self, line_by_chain: ProductPoset) -> None:
        """Product boxes multiply factor sizes."""
        box = Window.box(line_by_chain, ((0,), "a"), ((2,), "c"))
        assert box.size == 9


class TestUpperSets:
    """Tails inside a window."""

    def test_strict_and_weak(self, box11: Window) -> None:
        """The strict upper set omits the element itself."""
        assert box11.strict_upper_set((0, 1)) == [(1, 1)]
        assert box11.weak_upper_set((0, 1)) == [(0, 1), (1, 1)]

    def test_maximal(self, box11: Window) -> None:
        """Only the top corner of a box is maximal."""
        assert box11.is_maximal((1, 1))
        assert box11.non_maximal() == [(0, 0), (0, 1), (1, 0)]


class TestGrowth:
    """Growing and shrinking boxes."""

    def test_grow_along_step(self, box11: Window) -> None:
        """Growing by (1,0) twice extends the first coordinate."""
        assert box11.grow(2, (1, 0)).hi == (3, 1)

    def test_growth_chain(self, box11: Window) -> None:
        """The chain starts at the window itself."""
        chain = box11.growth_chain(3)
        assert [w.size for w in chain] == [4, 9, 16]

    def test_shrink_clamps(self, box11: Window) -> None:
        """Shrinking past the lower corner stops there."""
        assert box11.shrink(5).size == 1

    def test_shrink_chain_smallest_first(self, box22: Window) -> None:
        """The shrink chain ends at the window itself."""
        chain = box22.shrink_chain(3)
        assert [w.size for w in chain] == [1, 4, 9]

    def test_diagonal_chain(self, box22: Window) -> None:
        """The diagonal chain stops before the maximal corner."""
        assert box22.diagonal_chain(5) == [(0, 0), (1, 1)]


class TestExplicit:
    """Windows given by their elements."""

    def test_convex_set(self, chain3: FiniteExplicitPoset) -> None:
        """{a, b, c} is convex."""
        window = Window.from_elements(chain3, ["c", "a", "b"])
        assert window.elements == ("a", "b", "c")
        assert not window.is_box
        assert window.label() == "{a, b, c}"

    def test_not_convex(self, chain3: FiniteExplicitPoset) -> None:
        """{a, c} skips b."""
        with pytest.raises(PosetMembershipError):
            Window.from_elements(chain3, ["a", "c"])

    def test_explicit_cannot_grow(self, chain3: FiniteExplicitPoset) -> None:
        """Only boxes grow, but growing by zero is a no-op."""
        window = Window.from_elements(chain3, ["a", "b"])
        assert window.grow(0) is window
        with pytest.raises(PosetMembershipError):
            window.grow(1)
