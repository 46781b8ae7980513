"""Tests for the session file parser."""

import pytest

from src.cli.corpus import load_corpus_text
from src.cli.parser import parse, parse_combination, split_top
from src.cli.syntax import (
    AlgebraDecl,
    CokerModule,
    FreeModuleDecl,
    ParamDecl,
    RunDecl,
    SimpleModule,
    SumModule,
    Term,
    TruncateModule,
    WindowDecl,
    ZeroModule,
)
from src.shared.errors import ParseError


class TestSplitTop:
    """Whitespace splitting that respects brackets."""

    def test_brackets(self) -> None:
        """Spaces inside parentheses do not split."""
        assert split_top("(0, 0) (1,1)") == ["(0, 0)", "(1,1)"]

    def test_blank(self) -> None:
        """Blank text has no tokens."""
        assert split_top("   ") == []


class TestParseCombination:
    """Linear combinations of words."""

    def test_terms(self) -> None:
        """Numbers and parameters are coefficients, names are generators."""
        terms = parse_combination("3/2*x - q*y*x", {"q"})
        assert terms == (
            Term(1, ("3/2",), ("x",)),
            Term(-1, ("q",), ("y", "x")),
        )

    def test_leading_minus(self) -> None:
        """A combination may start with a sign."""
        assert parse_combination("-x + y", set()) == (
            Term(-1, (), ("x",)),
            Term(1, (), ("y",)),
        )

    def test_unit_and_zero(self) -> None:
        """`e` is the empty word and `0` the empty combination."""
        assert parse_combination("e", set()) == (Term(1, (), ()),)
        assert parse_combination("0", set()) == ()

    def test_undeclared_parameter_is_a_generator(self) -> None:
        """Without a param declaration, q is read as a generator name."""
        assert parse_combination("q*x", set()) == (Term(1, (), ("q", "x")),)

    @pytest.mark.parametrize("text", ["", "x$y", "x y"])
    def test_malformed(self, text: str) -> None:
        """Empty or unreadable combinations are rejected."""
        with pytest.raises(ParseError):
            parse_combination(text, set())


class TestParse:
    """Declarations, one per line."""

    def test_corpus_file(self) -> None:
        """The polynomial ring session has every declaration kind it uses."""
        spec = parse(load_corpus_text("poly_xy"))
        assert spec.field is not None and spec.field.text == "Q"
        assert spec.poset is not None and spec.poset.text == "zlattice 2"
        assert spec.algebra == AlgebraDecl("A", "invariant")
        assert [g.name for g in spec.gens] == ["x", "y"]
        assert spec.rels[0].move == "(1,1)"
        assert spec.rels[0].terms == (Term(1, (), ("x", "y")), Term(-1, (), ("y", "x")))
        assert spec.windows == (WindowDecl("(0,0)", "(2,2)"),)
        assert spec.runs[0] == RunDecl("dims", ("(0,0)", "(2,2)"))
        assert len(spec.runs) == 4

    def test_lines_are_recorded(self) -> None:
        """Declarations remember their line; comments and blanks are skipped."""
        spec = parse("# header\n\nfield Q\nposet zlattice 1  # the line\ngen t (1)\n")
        assert spec.field is not None and spec.field.line == 3
        assert spec.poset is not None and spec.poset.text == "zlattice 1"
        assert spec.gens[0].line == 5

    def test_params_feed_relations(self) -> None:
        """A declared param becomes a coefficient factor."""
        spec = parse("param q = 3\nrel (1,1): x*y - q*y*x\n")
        assert spec.params == (ParamDecl("q", "3"),)
        assert spec.rels[0].terms[1] == Term(-1, ("q",), ("y", "x"))

    def test_algebra_header(self) -> None:
        """The algebra name and kind are both optional."""
        assert parse("algebra\n").algebra == AlgebraDecl("A", None)
        assert parse("algebra B explicit\n").algebra == AlgebraDecl("B", "explicit")

    def test_window_forms(self) -> None:
        """Windows may be written as two corners or as LO..HI."""
        spec = parse("window (0,0) (1,1)\nwindow (0,0)..(2,2)\n")
        assert spec.windows == (WindowDecl("(0,0)", "(1,1)"), WindowDecl("(0,0)", "(2,2)"))

    def test_run_arguments(self) -> None:
        """Run lines keep their arguments as tokens."""
        spec = parse("run check star (0,0)..(2,2)\n")
        assert spec.runs == (RunDecl("check", ("star", "(0,0)..(2,2)")),)


class TestModules:
    """Module declarations."""

    def test_forms(self) -> None:
        """Each module form has its own node."""
        spec = parse(
            "module F = free P(0,0) P(1,0)\n"
            "module S = simple (0,0)\n"
            "module T = truncate F (1,1)\n"
            "module M = sum S T\n"
            "module Z = zero\n"
        )
        assert spec.modules == (
            FreeModuleDecl("F", ("(0,0)", "(1,0)")),
            SimpleModule("S", "(0,0)"),
            TruncateModule("T", "F", "(1,1)"),
            SumModule("M", "S", "T"),
            ZeroModule("Z"),
        )

    def test_coker(self) -> None:
        """A cokernel lists one column per source."""
        spec = parse("module K = coker [ P(1,0) P(0,1) -> P(0,0) : x ; y ]\n")
        assert spec.modules == (
            CokerModule(
                "K",
                ("P(1,0)", "P(0,1)"),
                ("P(0,0)",),
                (((Term(1, (), ("x",)),),), ((Term(1, (), ("y",)),),)),
            ),
        )

    @pytest.mark.parametrize(
        "line",
        [
            "module K = coker [ P(1,0) -> P(0,0) : x, y ]",
            "module K = coker [ P(1,0) P(0,1) -> P(0,0) : x ]",
            "module K = coker P(1,0) -> P(0,0) : x",
            "module S = simple (0,0) (1,1)",
            "module W = wedge A B",
            "module = zero",
        ],
    )
    def test_malformed(self, line: str) -> None:
        """Arity, shape and form errors are reported on the line."""
        with pytest.raises(ParseError) as exc_info:
            parse(f"field Q\n{line}\n")
        assert exc_info.value.line == 2


class TestErrors:
    """Syntax errors carry a line and column."""

    def test_unknown_keyword(self) -> None:
        """An unknown declaration is located at its first character."""
        with pytest.raises(ParseError) as exc_info:
            parse("field Q\n  frobnicate x\n")
        assert exc_info.value.line == 2
        assert exc_info.value.column == 3
        assert str(exc_info.value) == "2:3: unknown declaration 'frobnicate'"

    def test_column_points_at_arguments(self) -> None:
        """Arity errors point just past the keyword."""
        with pytest.raises(ParseError) as exc_info:
            parse("gen x\n")
        assert exc_info.value.column == 5

    @pytest.mark.parametrize(
        "text",
        [
            "field Q\nfield Q\n",
            "poset zlattice 1\nposet zlattice 2\n",
            "algebra A\nalgebra B\n",
            "algebra a b c\n",
            "param q 3\n",
            "rel (1,1) x*y\n",
            "run\n",
            "window (0,0)\n",
        ],
    )
    def test_malformed_declarations(self, text: str) -> None:
        """Repeated headers and malformed lines are rejected."""
        with pytest.raises(ParseError):
            parse(text)
