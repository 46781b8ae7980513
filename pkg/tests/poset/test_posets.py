"""Tests for index posets and their declarations."""

import pytest

from src.poset.posets import (
    FiniteExplicitPoset,
    IntegerLattice,
    ProductPoset,
    is_name,
    parse_poset,
)
from src.shared.errors import PosetMembershipError, PosetValidationError
from src.shared.types import Verdict


class TestIntegerLattice:
    """Z^r with the componentwise order."""

    def test_componentwise_order(self, lattice2: IntegerLattice) -> None:
        """(0,1) <= (1,1) but (0,1) and (1,0) are incomparable."""
        assert lattice2.leq((0, 1), (1, 1))
        assert not lattice2.leq((0, 1), (1, 0))
        assert not lattice2.leq((1, 0), (0, 1))

    def test_lt_is_strict(self, lattice2: IntegerLattice) -> None:
        """An element is not strictly below itself."""
        assert not lattice2.lt((1, 1), (1, 1))
        assert lattice2.lt((0, 0), (0, 1))

    def test_leq_rejects_foreign_element(self, lattice2: IntegerLattice) -> None:
        """Comparing a wrong-rank tuple raises."""
        with pytest.raises(PosetMembershipError):
            lattice2.leq((0,), (1, 1))

    def test_rank_must_be_positive(self) -> None:
        """Z^0 is rejected."""
        with pytest.raises(PosetValidationError):
            IntegerLattice(0)

    def test_interval_in_linear_extension(self, lattice2: IntegerLattice) -> None:
        """Intervals sort by coordinate sum, then lexicographically."""
        assert lattice2.interval((0, 0), (1, 1)) == [(0, 0), (0, 1), (1, 0), (1, 1)]

    def test_interval_empty_when_unordered(self, lattice2: IntegerLattice) -> None:
        """[i, j] is empty unless i <= j."""
        assert lattice2.interval((1, 0), (0, 1)) == []

    def test_upper_bound_and_difference(self, lattice2: IntegerLattice) -> None:
        """The canonical upper bound is the coordinatewise max."""
        assert lattice2.upper_bound((2, 0), (0, 3)) == (2, 3)
        assert lattice2.difference((1, 1), (3, 2)) == (2, 1)

    def test_parse_and_format(self, lattice2: IntegerLattice) -> None:
        """Elements round-trip through their input syntax."""
        x = lattice2.parse_element(" (1, -2) ")
        assert x == (1, -2)
        assert lattice2.format_element(x) == "(1,-2)"

    def test_parse_wrong_rank(self, lattice2: IntegerLattice) -> None:
        """A three-coordinate element is not in Z^2."""
        with pytest.raises(PosetMembershipError):
            lattice2.parse_element("(1,2,3)")

    def test_diagonal_successor(self, lattice2: IntegerLattice) -> None:
        """The diagonal step adds one to every coordinate."""
        assert lattice2.diagonal_successor((0, 2)) == (1, 3)


class TestFiniteExplicitPoset:
    """Finite orders given by generating relations."""

    def test_transitive_closure(self, chain3: FiniteExplicitPoset) -> None:
        """a < b < c implies a < c."""
        assert chain3.leq("a", "c")
        assert not chain3.leq("c", "a")

    def test_interval(self, chain3: FiniteExplicitPoset) -> None:
        """[a, c] is the whole chain."""
        assert chain3.interval("a", "c") == ["a", "b", "c"]

    def test_top_has_no_successor(self, chain3: FiniteExplicitPoset) -> None:
        """The maximum has no diagonal successor."""
        assert chain3.diagonal_successor("a") == "b"
        assert chain3.diagonal_successor("c") is None

    def test_linear_extension_respects_order(self) -> None:
        """Insertion order yields to the relations."""
        poset = FiniteExplicitPoset(["c", "a", "b"], [("a", "b"), ("b", "c")])
        assert poset.ordered() == ["a", "b", "c"]

    def test_duplicate_label(self) -> None:
        """Labels must be distinct."""
        with pytest.raises(PosetValidationError):
            FiniteExplicitPoset(["a", "a"], [])

    def test_unknown_label_in_relation(self) -> None:
        """Relations may only name declared elements."""
        with pytest.raises(PosetValidationError):
            FiniteExplicitPoset(["a"], [("a", "z")])

    def test_validate_chain(self, chain3: FiniteExplicitPoset) -> None:
        """A chain is a directed poset."""
        out = chain3.validate()
        assert out.verdict == Verdict.VERIFIED
        assert out.certificate == {"elements": 3, "linear_extension": ["a", "b", "c"]}

    def test_validate_cycle(self) -> None:
        """A cycle violates antisymmetry."""
        out = FiniteExplicitPoset(["a", "b"], [("a", "b"), ("b", "a")]).validate()
        assert out.verdict == Verdict.REFUTED
        assert out.certificate["axiom"] == "antisymmetry"

    def test_validate_not_directed(self) -> None:
        """Two maximal elements have no common upper bound."""
        out = FiniteExplicitPoset(["a", "b", "c"], [("a", "b"), ("a", "c")]).validate()
        assert out.verdict == Verdict.REFUTED
        assert out.certificate == {"axiom": "directed", "witness": ["b", "c"]}

    def test_upper_bound_missing(self) -> None:
        """upper_bound raises when no bound exists."""
        poset = FiniteExplicitPoset(["a", "b"], [])
        with pytest.raises(PosetValidationError):
            poset.upper_bound("a", "b")

    def test_describe(self, chain3: FiniteExplicitPoset) -> None:
        """describe renders the declaration."""
        assert chain3.describe() == "finite {a,b,c} {a<b, b<c}"


class TestProductPoset:
    """Products of posets."""

    def test_product_order(self, line_by_chain: ProductPoset) -> None:
        """Both factors must be ordered."""
        assert line_by_chain.leq(((0,), "a"), ((1,), "b"))
        assert not line_by_chain.leq(((1,), "a"), ((0,), "b"))

    def test_parse_and_format(self, line_by_chain: ProductPoset) -> None:
        """Product elements are written `left|right`."""
        x = line_by_chain.parse_element("(0)|a")
        assert x == ((0,), "a")
        assert line_by_chain.format_element(x) == "(0)|a"

    def test_interval_size(self, line_by_chain: ProductPoset) -> None:
        """[(0)|a, (1)|c] has 2 * 3 elements."""
        assert len(line_by_chain.interval(((0,), "a"), ((1,), "c"))) == 6

    def test_diagonal_successor_saturates_chain(self, line_by_chain: ProductPoset) -> None:
        """At the top of the chain only the lattice factor moves."""
        assert line_by_chain.diagonal_successor(((0,), "c")) == ((1,), "c")

    def test_validate_has_factor_items(self, line_by_chain: ProductPoset) -> None:
        """Each factor is validated separately."""
        out = line_by_chain.validate()
        assert out.verdict == Verdict.VERIFIED
        assert len(out.items) == 2


class TestParsePoset:
    """Poset declarations."""

    def test_lattice(self) -> None:
        """`zlattice 3` is Z^3."""
        assert parse_poset("zlattice 3") == IntegerLattice(3)

    def test_finite_roundtrip(self, chain3: FiniteExplicitPoset) -> None:
        """parse_poset inverts describe."""
        assert parse_poset(chain3.describe()) == chain3

    def test_product(self, line_by_chain: ProductPoset) -> None:
        """Products take two parenthesized factors."""
        assert parse_poset("product (zlattice 1) (finite {a,b,c} {a<b, b<c})") == line_by_chain

    @pytest.mark.parametrize(
        "text",
        ["zlattice x", "finite a,b", "finite {a,b} {a-b}", "product (zlattice 1)", "tree 2"],
    )
    def test_malformed(self, text: str) -> None:
        """Malformed declarations raise PosetValidationError."""
        with pytest.raises(PosetValidationError):
            parse_poset(text)

    def test_is_name(self) -> None:
        """Names start with a letter or underscore."""
        assert is_name("x_1'")
        assert not is_name("1x")
