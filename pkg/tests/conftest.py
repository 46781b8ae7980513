"""Shared test fixtures for the ialg test suite."""

import pytest

from src.algebra.presentation import AlgebraPresentation
from src.cli.corpus import load_corpus_text
from src.cli.session import Session, load_session
from src.config.settings import Settings
from src.gradedmod.modules import ModulePresentation, free_module, simple_presentation
from src.poset.posets import FiniteExplicitPoset, IntegerLattice, ProductPoset
from src.poset.window import Window


@pytest.fixture
def settings() -> Settings:
    """Provide test settings with the default ceilings.

    Returns:
        Settings independent of any IALG_ environment overrides.
    """
    return Settings(
        default_field="Q",
        window_limit=10_000,
        component_dim_limit=10_000,
        path_count_limit=1_000_000,
        generation_chain_length=3,
        probe_chain_length=4,
        probe_margin=1,
        workers=1,
    )


@pytest.fixture
def lattice2() -> IntegerLattice:
    """The lattice Z^2."""
    return IntegerLattice(2)


@pytest.fixture
def chain3() -> FiniteExplicitPoset:
    """The chain a < b < c."""
    return FiniteExplicitPoset(["a", "b", "c"], [("a", "b"), ("b", "c")])


@pytest.fixture
def line_by_chain(chain3: FiniteExplicitPoset) -> ProductPoset:
    """Z times the chain a < b < c."""
    return ProductPoset(IntegerLattice(1), chain3)


@pytest.fixture
def free_session(settings: Settings) -> Session:
    """Session of the free algebra k<x,y> delooped over Z^2."""
    return load_session(load_corpus_text("free_xy"), settings=settings)


@pytest.fixture
def poly_session(settings: Settings) -> Session:
    """Session of the polynomial ring k[x,y] delooped over Z^2."""
    return load_session(load_corpus_text("poly_xy"), settings=settings)


@pytest.fixture
def q_session(settings: Settings) -> Session:
    """Session of the q-commuting plane with q = 3."""
    return load_session(load_corpus_text("q_poly_xy"), settings=settings)


@pytest.fixture
def line_session(settings: Settings) -> Session:
    """Session of k[t] delooped over Z."""
    return load_session(load_corpus_text("deloop_zn"), settings=settings)


@pytest.fixture
def product_session(settings: Settings) -> Session:
    """Session over Z times the three-element chain, over F_7."""
    return load_session(load_corpus_text("chain3_product"), settings=settings)


@pytest.fixture
def free_xy(free_session: Session) -> AlgebraPresentation:
    """The free algebra on x at (1,0) and y at (0,1)."""
    return free_session.algebra


@pytest.fixture
def poly_xy(poly_session: Session) -> AlgebraPresentation:
    """The commutative polynomial ring on x and y."""
    return poly_session.algebra


@pytest.fixture
def box11(lattice2: IntegerLattice) -> Window:
    """The window (0,0)..(1,1)."""
    return Window.box(lattice2, (0, 0), (1, 1))


@pytest.fixture
def box22(lattice2: IntegerLattice) -> Window:
    """The window (0,0)..(2,2)."""
    return Window.box(lattice2, (0, 0), (2, 2))


@pytest.fixture
def box33(lattice2: IntegerLattice) -> Window:
    """The window (0,0)..(3,3)."""
    return Window.box(lattice2, (0, 0), (3, 3))


@pytest.fixture
def p00(poly_xy: AlgebraPresentation) -> ModulePresentation:
    """The free module P_(0,0) over k[x,y]."""
    return free_module(poly_xy, [(0, 0)], name="P(0,0)")


@pytest.fixture
def p10(poly_xy: AlgebraPresentation) -> ModulePresentation:
    """The free module P_(1,0) over k[x,y]."""
    return free_module(poly_xy, [(1, 0)], name="P(1,0)")


@pytest.fixture
def s00(poly_xy: AlgebraPresentation) -> ModulePresentation:
    """The simple module S_(0,0) over k[x,y]."""
    return simple_presentation(poly_xy, (0, 0), poly_xy.star_generators((0, 0)), name="S(0,0)")


@pytest.fixture
def koszul(poly_session: Session) -> ModulePresentation:
    """The cokernel of (x, y): P_(1,0) + P_(0,1) -> P_(0,0)."""
    return poly_session.modules["K"]
