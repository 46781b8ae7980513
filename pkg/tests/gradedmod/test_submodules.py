"""Tests for submodules materialized on windows."""

import random

from src.algebra.presentation import AlgebraPresentation
from src.cli.corpus import corpus_names, load_corpus_text
from src.cli.session import Session, load_session
from src.config.settings import Settings
from src.gradedmod.modules import ModulePresentation, free_module
from src.gradedmod.submodules import kernel_in_window, quotient_component, tail, whole
from src.poset.window import Window


class TestTail:
    """M_{>d} and M_{>=d}."""

    def test_strict_tail_of_free_module(self, p00: ModulePresentation, box33: Window) -> None:
        """Everything but the bottom degree survives."""
        t = tail(p00, (0, 0), True, box33)
        assert t.dimension((0, 0)) == 0
        assert sum(t.dimensions().values()) == 15

    def test_weak_tail(self, p00: ModulePresentation, box33: Window) -> None:
        """The weak tail at (1,1) is the 3x3 upper corner."""
        t = tail(p00, (1, 1), False, box33)
        assert t.dimension((1, 1)) == 1
        assert t.dimension((1, 0)) == 0
        assert sum(t.dimensions().values()) == 9

    def test_tails_are_action_closed(self, p00: ModulePresentation, box33: Window) -> None:
        """Tails are submodules."""
        assert tail(p00, (0, 1), True, box33).is_action_closed()

    def test_contains(
        self, p00: ModulePresentation, poly_xy: AlgebraPresentation, box22: Window
    ) -> None:
        """g0*x lies in the strict tail at (0,0)."""
        m = p00.generator(0) * poly_xy.word_element((0, 0), ("x",))
        assert tail(p00, (0, 0), True, box22).contains((1, 0), m.vector)
        assert not tail(p00, (0, 0), True, box22).contains((0, 0), p00.generator(0).vector)

    def test_weak_tail_splits_off_the_bottom(self, settings: Settings) -> None:
        """dim (M_{>=d})_j = dim (M_{>d})_j + [j = d] dim M_d on 50 seeded corpus samples."""
        cases: list[tuple[ModulePresentation, Window]] = []
        for name in corpus_names():
            session = load_session(load_corpus_text(name), settings=settings)
            window = session.window()
            bottom = free_module(session.algebra, [window.elements[0]], name="P")
            cases.extend((m, window) for m in [*session.modules.values(), bottom])
        rng = random.Random(31)
        for _ in range(50):
            module, window = rng.choice(cases)
            d = rng.choice(window.elements)
            j = rng.choice(window.elements)
            weak = tail(module, d, False, window).dimension(j)
            strict = tail(module, d, True, window).dimension(j)
            bottom_dim = module.dimension(d) if j == d else 0
            assert weak == strict + bottom_dim, (module.name, d, j)


class TestWhole:
    """Restriction of the module itself."""

    def test_whole_vs_weak_tail(self, p00: ModulePresentation, box22: Window) -> None:
        """P_(0,0) restricted to a window starting at (0,0) is its weak tail."""
        assert whole(p00, box22).same_as(tail(p00, (0, 0), False, box22))
        assert not whole(p00, box22).same_as(tail(p00, (0, 0), True, box22))


class TestKernel:
    """Kernels of free-module maps."""

    def test_koszul_syzygy(self, koszul: ModulePresentation, box33: Window) -> None:
        """ker (x, y) over k[x,y] is one-dimensional wherever both coordinates are positive."""
        kernel = kernel_in_window(koszul.relation_map(), box33)
        dims = kernel.dimensions()
        assert dims[(1, 1)] == 1
        assert dims[(1, 0)] == 0
        assert sum(dims.values()) == 9
        assert kernel.is_action_closed()

    def test_free_algebra_has_no_syzygy(self, free_session: Session, box33: Window) -> None:
        """(x, y) is injective over k<x,y>."""
        kernel = kernel_in_window(free_session.modules["K"].relation_map(), box33)
        assert sum(kernel.dimensions().values()) == 0


class TestQuotientComponent:
    """dim (M / M_{>d})_j."""

    def test_cut(self, p00: ModulePresentation) -> None:
        """Components strictly above the cut vanish."""
        assert quotient_component(p00, (0, 0), (0, 0)) == 1
        assert quotient_component(p00, (0, 0), (1, 0)) == 0
        assert quotient_component(p00, (1, 0), (0, 1)) == 1
