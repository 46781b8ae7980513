"""Turn a parsed SessionSpec into live posets, algebras, modules and windows.

Every engine error raised while building a declaration is re-raised as a
ParseError carrying that declaration's line, so input mistakes surface
with a location. Resource ceilings keep their own error type.
"""

from __future__ import annotations

import dataclasses
import logging
from dataclasses import dataclass

from src.algebra.moves import parse_move
from src.algebra.presentation import AlgebraPresentation, Generator, Relation
from src.cli.parser import parse
from src.cli.syntax import (
    CokerModule,
    FreeModuleDecl,
    ModuleDecl,
    SessionSpec,
    SimpleModule,
    SumModule,
    Term,
    TruncateModule,
    WindowDecl,
)
from src.config.settings import Settings, get_settings
from src.gradedmod.generation import truncation
from src.gradedmod.modules import (
    FreeModule,
    ModuleMap,
    ModulePresentation,
    direct_sum,
    free_module,
    simple_presentation,
    zero_module,
)
from src.poset.posets import FiniteExplicitPoset, IndexElement, Poset, parse_poset
from src.poset.window import Window
from src.shared.errors import IalgError, ParseError, PosetValidationError, ResourceLimitError
from src.shared.outcome import CheckOutcome
from src.shared.field import FieldSpec, Scalar
from src.shared.types import AlgebraKind

logger = logging.getLogger(__name__)


@dataclass
class Session:
    """Live objects of one input file.

    Attributes:
        spec: The parsed file.
        settings: Ceilings and chain lengths in force.
        poset: Index poset.
        field: Coefficient field.
        algebra: The declared algebra.
        params: Named field constants.
        modules: Declared modules by name, in declaration order.
        windows: Declared windows, in declaration order.
    """

    spec: SessionSpec
    settings: Settings
    poset: Poset
    field: FieldSpec
    algebra: AlgebraPresentation
    params: dict[str, Scalar] = dataclasses.field(default_factory=dict)
    modules: dict[str, ModulePresentation] = dataclasses.field(default_factory=dict)
    windows: list[Window] = dataclasses.field(default_factory=list)

    def index(self, text: str) -> IndexElement:
        """Parse a poset element.

        Raises:
            PosetMembershipError: If the text is not an element.
        """
        return self.poset.parse_element(text)

    def window(self, text: str | None = None) -> Window:
        """The window named by `LO..HI`, or the default window.

        The default is the first declared window; a finite poset with no
        declared window uses all of its elements.

        Raises:
            ParseError: If no window is given and none can be defaulted.
        """
        if text is not None:
            lo, sep, hi = text.partition("..")
            if not sep:
                raise ParseError(f"expected a window LO..HI, got {text!r}")
            return Window.box(
                self.poset, self.index(lo), self.index(hi), limit=self.settings.window_limit
            )
        if self.windows:
            return self.windows[0]
        if isinstance(self.poset, FiniteExplicitPoset):
            return Window.from_elements(self.poset, self.poset.ordered())
        raise ParseError("no window declared; add a `window` line or pass --window")

    def module(self, ref: str) -> ModulePresentation:
        """Resolve a module reference: a declared name, `P(i)` or `S(i)`.

        Raises:
            ParseError: If the reference names nothing.
        """
        declared = self.modules.get(ref)
        if declared is not None:
            return declared
        if ref[:1] in ("P", "S") and len(ref) > 1:
            try:
                i = self.index(ref[1:])
            except IalgError as exc:
                raise ParseError(f"unknown module {ref!r}: {exc}") from exc
            if ref[0] == "P":
                return free_module(self.algebra, [i], name=ref)
            return simple_presentation(
                self.algebra, i, self.algebra.star_generators(i), name=ref
            )
        raise ParseError(f"unknown module {ref!r}")

    def chain(self, window: Window, length: int | None = None) -> list[IndexElement]:
        """Diagonal probe chain inside a window."""
        return window.diagonal_chain(length or self.settings.probe_chain_length)


def _coefficient(term: Term, params: dict[str, Scalar], f: FieldSpec) -> Scalar:
    c = f.one()
    for factor in term.coefficient:
        c = f.mul(c, params[factor] if factor in params else f.coerce(factor))
    return f.neg(c) if term.sign < 0 else c


def _generator_index(session: Session, token: str) -> IndexElement:
    if not token.startswith("P"):
        raise ParseError(f"expected a generator P(index), got {token!r}")
    return session.index(token[1:])


def _build_coker(session: Session, decl: CokerModule) -> ModulePresentation:
    algebra = session.algebra
    sources = [_generator_index(session, t) for t in decl.sources]
    targets = [_generator_index(session, t) for t in decl.targets]
    columns = []
    for t, column in enumerate(decl.columns):
        entries = []
        for gi, terms in enumerate(column):
            weighted = [
                (_coefficient(term, session.params, session.field), term.word) for term in terms
            ]
            entries.append(algebra.element_from_terms(targets[gi], sources[t], weighted))
        columns.append(tuple(entries))
    f = ModuleMap(FreeModule(algebra, sources), FreeModule(algebra, targets), tuple(columns))
    return ModulePresentation.from_map(f, name=decl.name)


def _build_module(session: Session, decl: ModuleDecl) -> ModulePresentation:
    algebra = session.algebra
    if isinstance(decl, CokerModule):
        return _build_coker(session, decl)
    if isinstance(decl, FreeModuleDecl):
        return free_module(algebra, [session.index(i) for i in decl.indices], name=decl.name)
    if isinstance(decl, SimpleModule):
        i = session.index(decl.index)
        return simple_presentation(algebra, i, algebra.star_generators(i), name=decl.name)
    if isinstance(decl, TruncateModule):
        quotient, stable = truncation(
            session.module(decl.operand),
            session.index(decl.cut),
            session.window(),
            name=decl.name,
        )
        if not stable:
            logger.warning("truncation_unstable", extra={"module": decl.name})
        return quotient
    if isinstance(decl, SumModule):
        return direct_sum(session.module(decl.left), session.module(decl.right), name=decl.name)
    return zero_module(algebra, name=decl.name)


def _build_window(poset: Poset, decl: WindowDecl, settings: Settings) -> Window:
    return Window.box(
        poset,
        poset.parse_element(decl.lo),
        poset.parse_element(decl.hi),
        limit=settings.window_limit,
    )


def _poset_failure(outcome: CheckOutcome) -> str:
    for node in outcome.walk():
        axiom = node.certificate.get("axiom")
        if axiom is None:
            continue
        a, b = node.certificate["witness"]
        if axiom == "directed":
            return f"not directed: {a} and {b} have no common upper bound"
        return f"not antisymmetric: relations form a cycle through {a} and {b}"
    return "poset axioms fail"


def _located(exc: IalgError, line: int) -> ParseError:
    if isinstance(exc, ParseError):
        return ParseError(exc.message, exc.line or line, exc.column)
    return ParseError(str(exc), line)


def build_session(
    spec: SessionSpec, *, settings: Settings | None = None, field_text: str | None = None
) -> Session:
    """Construct the live objects a spec declares.

    Args:
        spec: Parsed file.
        settings: Ceilings and chain lengths (defaults to get_settings()).
        field_text: Field declaration overriding the file's `field` line.

    Returns:
        The session.

    Raises:
        ParseError: On an unknown identifier, a bad move, an inhomogeneous
            relation or any other invalid declaration, with its line.
        ResourceLimitError: If a declared window exceeds its ceiling.
    """
    settings = settings or get_settings()
    if spec.poset is None:
        raise ParseError("no poset declared")
    line = 0
    try:
        line = spec.field.line if spec.field is not None and field_text is None else 0
        text = field_text or (spec.field.text if spec.field else settings.default_field)
        f = FieldSpec.parse(text)
        line = spec.poset.line
        poset = parse_poset(spec.poset.text)
        verdict = poset.validate()
        if not verdict.passed:
            raise PosetValidationError(_poset_failure(verdict))
        params: dict[str, Scalar] = {}
        for p in spec.params:
            line = p.line
            if p.name in params:
                raise ParseError(f"param {p.name} declared twice")
            params[p.name] = f.coerce(p.value)
        generators: list[Generator] = []
        for g in spec.gens:
            line = g.line
            generators.append(Generator(g.name, parse_move(poset, g.move)))
            AlgebraPresentation(poset, f, generators, settings=settings)
        relations: list[Relation] = []
        for r in spec.rels:
            line = r.line
            relation = Relation(
                parse_move(poset, r.move),
                tuple((_coefficient(t, params, f), t.word) for t in r.terms),
            )
            AlgebraPresentation(poset, f, generators, [relation], settings=settings)
            relations.append(relation)
        decl = spec.algebra
        line = decl.line if decl is not None else 0
        algebra = AlgebraPresentation(
            poset,
            f,
            generators,
            relations,
            name=decl.name if decl is not None else "A",
            declared_kind=AlgebraKind(decl.kind) if decl is not None and decl.kind else None,
            settings=settings,
        )
        session = Session(spec, settings, poset, f, algebra, params)
        for w in spec.windows:
            line = w.line
            session.windows.append(_build_window(poset, w, settings))
        for m in spec.modules:
            line = m.line
            if m.name in session.modules:
                raise ParseError(f"module {m.name} declared twice")
            session.modules[m.name] = _build_module(session, m)
    except ResourceLimitError:
        raise
    except IalgError as exc:
        raise _located(exc, line) from exc
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(str(exc), line) from exc
    logger.info(
        "session_built",
        extra={
            "poset": poset.describe(),
            "field": f.label(),
            "generators": len(generators),
            "relations": len(relations),
            "modules": list(session.modules),
        },
    )
    return session


def load_session(
    text: str, *, settings: Settings | None = None, field_text: str | None = None
) -> Session:
    """Parse and build in one step."""
    return build_session(parse(text), settings=settings, field_text=field_text)
