"""Tests for the session syntax tree and printer."""

import pytest

from src.cli.corpus import corpus_names, load_corpus_text
from src.cli.parser import parse
from src.cli.syntax import FieldDecl, Term, format_combination, format_session


class TestFormatCombination:
    """Rendering linear combinations."""

    def test_signs(self) -> None:
        """Later terms are joined with spaced signs."""
        terms = (Term(1, (), ("x", "y")), Term(-1, ("3", "q"), ("y", "x")))
        assert format_combination(terms) == "x*y - 3*q*y*x"

    def test_leading_negative(self) -> None:
        """A leading minus sticks to its term."""
        assert format_combination((Term(-1, (), ("x",)),)) == "-x"

    def test_unit_and_zero(self) -> None:
        """The empty word prints as e, the empty combination as 0."""
        assert format_combination((Term(1, ("2",), ()),)) == "2*e"
        assert format_combination(()) == "0"


class TestFormatSession:
    """Printed sessions parse back to equal trees."""

    def test_line_numbers_ignored(self) -> None:
        """Equality does not look at source lines."""
        assert FieldDecl("Q", line=1) == FieldDecl("Q", line=7)

    @pytest.mark.parametrize("name", corpus_names())
    def test_corpus_reprints(self, name: str) -> None:
        """Every corpus file survives a print and re-parse."""
        spec = parse(load_corpus_text(name))
        assert parse(format_session(spec)) == spec

    def test_layout(self) -> None:
        """Headers come first, runs last, one declaration per line."""
        spec = parse("run dims (0) (2)\ngen t (1)\nposet zlattice 1\nfield Q\n")
        assert format_session(spec) == (
            "field Q\nposet zlattice 1\ngen t (1)\nrun dims (0) (2)\n"
        )
