"""Line-oriented parser for `.ialg` session files.

One declaration per line; `#` starts a comment. The parser checks
syntax and arity only. Names, degrees and homogeneity are resolved by
`build_session`, which reports errors against the same line numbers.
"""

from __future__ import annotations

import re

from src.cli.syntax import (
    AlgebraDecl,
    CokerModule,
    Combination,
    FieldDecl,
    FreeModuleDecl,
    GenDecl,
    ModuleDecl,
    ParamDecl,
    PosetDecl,
    RelDecl,
    RunDecl,
    SessionSpec,
    SimpleModule,
    SumModule,
    Term,
    TruncateModule,
    WindowDecl,
    ZeroModule,
)
from src.poset.posets import is_name
from src.shared.errors import ParseError

_NUMBER = re.compile(r"^\d+(/\d+)?$")
_TERM = re.compile(r"\s*([+-]?)\s*([^+-]+)")
_OPEN = "([{"
_CLOSE = ")]}"
KINDS = ("invariant", "explicit")


def split_top(text: str) -> list[str]:
    """Split on whitespace outside brackets: `(0, 0) (1,1)` gives two tokens."""
    tokens: list[str] = []
    depth = 0
    current: list[str] = []
    for ch in text:
        if ch in _OPEN:
            depth += 1
        elif ch in _CLOSE:
            depth -= 1
        if ch.isspace() and depth == 0:
            if current:
                tokens.append("".join(current))
                current = []
            continue
        current.append(ch)
    if current:
        tokens.append("".join(current))
    return tokens


def parse_combination(
    text: str, params: set[str], *, line: int = 0, column: int = 0
) -> Combination:
    """Parse `x*y - q*y*x`, `3/2*x`, `e` or `0`.

    Numbers and declared parameter names are coefficient factors; every
    other factor is a generator name. `e` is the empty word.

    Raises:
        ParseError: On an empty term or a malformed factor.
    """
    body = text.strip()
    if body == "0":
        return ()
    if not body:
        raise ParseError("empty linear combination", line, column)
    terms: list[Term] = []
    consumed = 0
    for match in _TERM.finditer(body):
        if match.start() != consumed:
            raise ParseError(f"cannot read {body[consumed:]!r}", line, column + consumed)
        consumed = match.end()
        sign = -1 if match.group(1) == "-" else 1
        if not match.group(1) and terms:
            raise ParseError("missing + or - between terms", line, column + match.start())
        coefficient: list[str] = []
        word: list[str] = []
        for factor in (f.strip() for f in match.group(2).split("*")):
            if _NUMBER.match(factor) or factor in params:
                coefficient.append(factor)
            elif factor == "e":
                continue
            elif is_name(factor):
                word.append(factor)
            else:
                raise ParseError(f"bad factor {factor!r}", line, column + match.start(2))
        terms.append(Term(sign, tuple(coefficient), tuple(word)))
    if consumed != len(body):
        raise ParseError(f"cannot read {body[consumed:]!r}", line, column + consumed)
    return tuple(terms)


def _parse_coker(name: str, body: str, params: set[str], line: int, column: int) -> CokerModule:
    inner = body.strip()
    if not (inner.startswith("[") and inner.endswith("]")):
        raise ParseError("coker needs a bracketed matrix [ SRC -> TGT : cols ]", line, column)
    inner = inner[1:-1]
    head, colon, cols = inner.partition(":")
    if not colon or "->" not in head:
        raise ParseError("coker matrix needs `SRC -> TGT : columns`", line, column)
    left, _, right = head.partition("->")
    sources = tuple(split_top(left))
    targets = tuple(split_top(right))
    columns: list[tuple[Combination, ...]] = []
    if cols.strip():
        for raw in cols.split(";"):
            entries = tuple(
                parse_combination(e, params, line=line, column=column) for e in raw.split(",")
            )
            if len(entries) != len(targets):
                raise ParseError(
                    f"column {len(columns)} has {len(entries)} entries, expected {len(targets)}",
                    line,
                    column,
                )
            columns.append(entries)
    if len(columns) != len(sources):
        raise ParseError(
            f"coker has {len(sources)} sources but {len(columns)} columns", line, column
        )
    return CokerModule(name, sources, targets, tuple(columns), line=line)


def _parse_module(rest: str, params: set[str], line: int, column: int) -> ModuleDecl:
    name, eq, body = rest.partition("=")
    name = name.strip()
    if not eq or not is_name(name):
        raise ParseError("expected `module NAME = FORM ...`", line, column)
    tokens = split_top(body)
    if not tokens:
        raise ParseError(f"module {name} has no form", line, column)
    form, args = tokens[0], tokens[1:]
    if form == "coker":
        return _parse_coker(name, body.strip()[len("coker") :], params, line, column)
    if form == "free":
        if not all(a.startswith("P") for a in args):
            raise ParseError("free modules list generators as P(index)", line, column)
        return FreeModuleDecl(name, tuple(a[1:] for a in args), line=line)
    arity = {"simple": 1, "truncate": 2, "sum": 2, "zero": 0}
    if form not in arity:
        raise ParseError(f"unknown module form {form!r}", line, column)
    if len(args) != arity[form]:
        raise ParseError(f"{form} takes {arity[form]} arguments, got {len(args)}", line, column)
    if form == "simple":
        return SimpleModule(name, args[0], line=line)
    if form == "truncate":
        return TruncateModule(name, args[0], args[1], line=line)
    if form == "sum":
        return SumModule(name, args[0], args[1], line=line)
    return ZeroModule(name, line=line)


def _parse_window(rest: str, line: int, column: int) -> WindowDecl:
    tokens = split_top(rest)
    if len(tokens) == 1 and ".." in tokens[0]:
        lo, _, hi = tokens[0].partition("..")
        return WindowDecl(lo, hi, line=line)
    if len(tokens) != 2:
        raise ParseError("expected `window LO HI`", line, column)
    return WindowDecl(tokens[0], tokens[1], line=line)


def parse(text: str) -> SessionSpec:
    """Parse session text into a SessionSpec.

    Args:
        text: File contents.

    Returns:
        The syntax tree.

    Raises:
        ParseError: With the 1-based line and column of the first error.
    """
    field_decl: FieldDecl | None = None
    poset_decl: PosetDecl | None = None
    algebra_decl: AlgebraDecl | None = None
    params: list[ParamDecl] = []
    gens: list[GenDecl] = []
    rels: list[RelDecl] = []
    modules: list[ModuleDecl] = []
    windows: list[WindowDecl] = []
    runs: list[RunDecl] = []
    param_names: set[str] = set()
    for number, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0]
        stripped = content.strip()
        if not stripped:
            continue
        column = len(content) - len(content.lstrip()) + 1
        keyword, _, rest = stripped.partition(" ")
        rest = rest.strip()
        rest_column = column + len(keyword) + 1
        if keyword == "field":
            if field_decl is not None:
                raise ParseError("field declared twice", number, column)
            field_decl = FieldDecl(rest, line=number)
        elif keyword == "poset":
            if poset_decl is not None:
                raise ParseError("poset declared twice", number, column)
            poset_decl = PosetDecl(rest, line=number)
        elif keyword == "algebra":
            if algebra_decl is not None:
                raise ParseError("algebra declared twice", number, column)
            algebra_decl = _parse_algebra(rest, number, rest_column)
        elif keyword == "param":
            name, eq, value = rest.partition("=")
            if not eq or not is_name(name.strip()) or not value.strip():
                raise ParseError("expected `param NAME = VALUE`", number, rest_column)
            params.append(ParamDecl(name.strip(), value.strip(), line=number))
            param_names.add(name.strip())
        elif keyword == "gen":
            tokens = split_top(rest)
            if len(tokens) != 2 or not is_name(tokens[0]):
                raise ParseError("expected `gen NAME MOVE`", number, rest_column)
            gens.append(GenDecl(tokens[0], tokens[1], line=number))
        elif keyword == "rel":
            move, colon, body = rest.partition(":")
            if not colon:
                raise ParseError("expected `rel MOVE: terms`", number, rest_column)
            terms = parse_combination(
                body, param_names, line=number, column=rest_column + len(move) + 1
            )
            rels.append(RelDecl(move.strip(), terms, line=number))
        elif keyword == "module":
            modules.append(_parse_module(rest, param_names, number, rest_column))
        elif keyword == "window":
            windows.append(_parse_window(rest, number, rest_column))
        elif keyword == "run":
            tokens = split_top(rest)
            if not tokens:
                raise ParseError("run needs a command", number, rest_column)
            runs.append(RunDecl(tokens[0], tuple(tokens[1:]), line=number))
        else:
            raise ParseError(f"unknown declaration {keyword!r}", number, column)
    return SessionSpec(
        field=field_decl,
        poset=poset_decl,
        algebra=algebra_decl,
        params=tuple(params),
        gens=tuple(gens),
        rels=tuple(rels),
        modules=tuple(modules),
        windows=tuple(windows),
        runs=tuple(runs),
    )


def _parse_algebra(rest: str, line: int, column: int) -> AlgebraDecl:
    tokens = rest.split()
    if len(tokens) > 2:
        raise ParseError("expected `algebra [NAME] [invariant|explicit]`", line, column)
    name, kind = "A", None
    for token in tokens:
        if token in KINDS:
            kind = token
        elif is_name(token):
            name = token
        else:
            raise ParseError(f"bad algebra name {token!r}", line, column)
    return AlgebraDecl(name, kind, line=line)
