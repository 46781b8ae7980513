"""Session syntax tree and its printer.

Every declaration keeps the line it came from for diagnostics; line
numbers do not take part in equality, so a printed session parses back
to an equal tree.
"""

from __future__ import annotations

from dataclasses import dataclass, field

Word = tuple[str, ...]


@dataclass(frozen=True)
class Term:
    """One signed term `coef*word` of a linear combination.

    Attributes:
        sign: +1 or -1.
        coefficient: Numeric or parameter factors (empty = 1).
        word: Generator names (empty = the local unit `e`).
    """

    sign: int
    coefficient: tuple[str, ...]
    word: Word


Combination = tuple[Term, ...]


@dataclass(frozen=True)
class FieldDecl:
    """`field Q` or `field Fp 7`."""

    text: str
    line: int = field(default=0, compare=False, kw_only=True)


@dataclass(frozen=True)
class PosetDecl:
    """`poset zlattice 2`, `poset finite {..} {..}` or `poset product (..) (..)`."""

    text: str
    line: int = field(default=0, compare=False, kw_only=True)


@dataclass(frozen=True)
class AlgebraDecl:
    """`algebra [NAME] [invariant|explicit]`."""

    name: str = "A"
    kind: str | None = None
    line: int = field(default=0, compare=False, kw_only=True)


@dataclass(frozen=True)
class ParamDecl:
    """`param q = 3`."""

    name: str
    value: str
    line: int = field(default=0, compare=False, kw_only=True)


@dataclass(frozen=True)
class GenDecl:
    """`gen x (1,0)`."""

    name: str
    move: str
    line: int = field(default=0, compare=False, kw_only=True)


@dataclass(frozen=True)
class RelDecl:
    """`rel (1,1): x*y - y*x`."""

    move: str
    terms: Combination
    line: int = field(default=0, compare=False, kw_only=True)


@dataclass(frozen=True)
class CokerModule:
    """`module K = coker [ SRC.. -> TGT.. : col ; col ]`; column t holds one entry per target."""

    name: str
    sources: tuple[str, ...]
    targets: tuple[str, ...]
    columns: tuple[tuple[Combination, ...], ...]
    line: int = field(default=0, compare=False, kw_only=True)


@dataclass(frozen=True)
class FreeModuleDecl:
    """`module F = free P(0,0) P(1,0)`."""

    name: str
    indices: tuple[str, ...]
    line: int = field(default=0, compare=False, kw_only=True)


@dataclass(frozen=True)
class SimpleModule:
    """`module S = simple (0,0)`."""

    name: str
    index: str
    line: int = field(default=0, compare=False, kw_only=True)


@dataclass(frozen=True)
class TruncateModule:
    """`module T = truncate N (1,1)`: N / N_{>d}."""

    name: str
    operand: str
    cut: str
    line: int = field(default=0, compare=False, kw_only=True)


@dataclass(frozen=True)
class SumModule:
    """`module M = sum N K`."""

    name: str
    left: str
    right: str
    line: int = field(default=0, compare=False, kw_only=True)


@dataclass(frozen=True)
class ZeroModule:
    """`module Z = zero`."""

    name: str
    line: int = field(default=0, compare=False, kw_only=True)


ModuleDecl = CokerModule | FreeModuleDecl | SimpleModule | TruncateModule | SumModule | ZeroModule


@dataclass(frozen=True)
class WindowDecl:
    """`window LO HI`."""

    lo: str
    hi: str
    line: int = field(default=0, compare=False, kw_only=True)


@dataclass(frozen=True)
class RunDecl:
    """`run COMMAND ARGS..`."""

    command: str
    args: tuple[str, ...] = ()
    line: int = field(default=0, compare=False, kw_only=True)


@dataclass(frozen=True)
class SessionSpec:
    """A parsed session file."""

    field: FieldDecl | None = None
    poset: PosetDecl | None = None
    algebra: AlgebraDecl | None = None
    params: tuple[ParamDecl, ...] = ()
    gens: tuple[GenDecl, ...] = ()
    rels: tuple[RelDecl, ...] = ()
    modules: tuple[ModuleDecl, ...] = ()
    windows: tuple[WindowDecl, ...] = ()
    runs: tuple[RunDecl, ...] = ()


def format_combination(terms: Combination) -> str:
    """Render a linear combination: `x*y - 3*q*y*x`, `e`, `0`."""
    if not terms:
        return "0"
    parts: list[str] = []
    for k, term in enumerate(terms):
        body = "*".join(term.coefficient + (term.word or ("e",)))
        if k == 0:
            parts.append(f"-{body}" if term.sign < 0 else body)
        else:
            parts.append(f"- {body}" if term.sign < 0 else f"+ {body}")
    return " ".join(parts)


def _format_module(decl: ModuleDecl) -> str:
    if isinstance(decl, CokerModule):
        columns = " ; ".join(
            ", ".join(format_combination(entry) for entry in column) for column in decl.columns
        )
        sources = " ".join(decl.sources)
        targets = " ".join(decl.targets)
        return f"module {decl.name} = coker [ {sources} -> {targets} : {columns} ]"
    if isinstance(decl, FreeModuleDecl):
        return f"module {decl.name} = free " + " ".join(f"P{i}" for i in decl.indices)
    if isinstance(decl, SimpleModule):
        return f"module {decl.name} = simple {decl.index}"
    if isinstance(decl, TruncateModule):
        return f"module {decl.name} = truncate {decl.operand} {decl.cut}"
    if isinstance(decl, SumModule):
        return f"module {decl.name} = sum {decl.left} {decl.right}"
    return f"module {decl.name} = zero"


def format_session(spec: SessionSpec) -> str:
    """Print a session in the input syntax, one declaration per line."""
    lines: list[str] = []
    if spec.field is not None:
        lines.append(f"field {spec.field.text}")
    if spec.poset is not None:
        lines.append(f"poset {spec.poset.text}")
    if spec.algebra is not None:
        header = f"algebra {spec.algebra.name}"
        if spec.algebra.kind is not None:
            header += f" {spec.algebra.kind}"
        lines.append(header)
    lines.extend(f"param {p.name} = {p.value}" for p in spec.params)
    lines.extend(f"gen {g.name} {g.move}" for g in spec.gens)
    lines.extend(f"rel {r.move}: {format_combination(r.terms)}" for r in spec.rels)
    lines.extend(_format_module(m) for m in spec.modules)
    lines.extend(f"window {w.lo} {w.hi}" for w in spec.windows)
    lines.extend(" ".join(("run", r.command) + r.args) for r in spec.runs)
    return "\n".join(lines) + "\n"
