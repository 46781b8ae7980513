"""Degree data of generators: lattice shifts, finite arrows, and their products.

A move says where a generator goes from a given index. Shifts apply
everywhere on a lattice, an arrow a->b applies only at a, the identity
`=` keeps a finite coordinate fixed. Composition of moves is what makes
relation homogeneity checkable on every poset kind.
"""

from __future__ import annotations

from dataclasses import dataclass

from src.poset.posets import (
    FiniteExplicitPoset,
    IndexElement,
    IntegerLattice,
    Poset,
    ProductPoset,
)
from src.shared.errors import PosetMembershipError, PresentationError


@dataclass(frozen=True)
class Shift:
    """Translation by a lattice vector."""

    delta: tuple[int, ...]


@dataclass(frozen=True)
class Arrow:
    """A step from one finite element to another."""

    source: str
    target: str


@dataclass(frozen=True)
class Identity:
    """Fixes a finite coordinate."""


@dataclass(frozen=True)
class ProductMove:
    """Componentwise move on a product poset."""

    left: Move
    right: Move


Move = Shift | Arrow | Identity | ProductMove


def identity_move(poset: Poset) -> Move:
    """The move of the empty word on this poset."""
    if isinstance(poset, IntegerLattice):
        return Shift((0,) * poset.rank)
    if isinstance(poset, ProductPoset):
        return ProductMove(identity_move(poset.left), identity_move(poset.right))
    return Identity()


def apply_move(poset: Poset, move: Move, x: IndexElement) -> IndexElement | None:
    """Return where move sends x, or None if it does not apply at x."""
    if isinstance(move, Shift):
        coords: tuple[int, ...] = x  # type: ignore[assignment]
        return tuple(a + s for a, s in zip(coords, move.delta, strict=True))
    if isinstance(move, Arrow):
        return move.target if x == move.source else None
    if isinstance(move, Identity):
        return x
    assert isinstance(poset, ProductPoset)
    pair: tuple[IndexElement, IndexElement] = x  # type: ignore[assignment]
    left = apply_move(poset.left, move.left, pair[0])
    right = apply_move(poset.right, move.right, pair[1])
    if left is None or right is None:
        return None
    return (left, right)


def compose_moves(first: Move, second: Move) -> Move | None:
    """Return the move of `first` followed by `second`, or None if they do not chain."""
    if isinstance(first, Shift) and isinstance(second, Shift):
        return Shift(tuple(a + b for a, b in zip(first.delta, second.delta, strict=True)))
    if isinstance(first, Identity):
        return second
    if isinstance(second, Identity):
        return first
    if isinstance(first, Arrow) and isinstance(second, Arrow):
        return Arrow(first.source, second.target) if first.target == second.source else None
    if isinstance(first, ProductMove) and isinstance(second, ProductMove):
        left = compose_moves(first.left, second.left)
        right = compose_moves(first.right, second.right)
        if left is None or right is None:
            return None
        return ProductMove(left, right)
    return None


def validate_move(poset: Poset, move: Move) -> None:
    """Check that a move fits the shape of the poset.

    Raises:
        PresentationError: On a shape mismatch or an unknown finite element.
    """
    if isinstance(poset, IntegerLattice):
        if not isinstance(move, Shift) or len(move.delta) != poset.rank:
            raise PresentationError(f"expected a shift of rank {poset.rank}")
        return
    if isinstance(poset, FiniteExplicitPoset):
        if isinstance(move, Identity):
            return
        if not isinstance(move, Arrow):
            raise PresentationError("expected an arrow a->b or '=' on a finite poset")
        if not (poset.contains(move.source) and poset.contains(move.target)):
            raise PresentationError(f"arrow {move.source}->{move.target} names unknown elements")
        return
    assert isinstance(poset, ProductPoset)
    if not isinstance(move, ProductMove):
        raise PresentationError("expected a product move left|right")
    validate_move(poset.left, move.left)
    validate_move(poset.right, move.right)


def _weakly_increasing(poset: Poset, move: Move) -> bool:
    if isinstance(move, Shift):
        return all(s >= 0 for s in move.delta)
    if isinstance(move, Arrow):
        return poset.leq(move.source, move.target)
    if isinstance(move, Identity):
        return True
    assert isinstance(poset, ProductPoset) and isinstance(move, ProductMove)
    return _weakly_increasing(poset.left, move.left) and _weakly_increasing(
        poset.right, move.right
    )


def _moves_somewhere(poset: Poset, move: Move) -> bool:
    if isinstance(move, Shift):
        return any(s != 0 for s in move.delta)
    if isinstance(move, Arrow):
        return move.source != move.target
    if isinstance(move, Identity):
        return False
    assert isinstance(poset, ProductPoset) and isinstance(move, ProductMove)
    return _moves_somewhere(poset.left, move.left) or _moves_somewhere(poset.right, move.right)


def is_strictly_positive(poset: Poset, move: Move) -> bool:
    """True if the move sends every index where it applies strictly upward."""
    return _weakly_increasing(poset, move) and _moves_somewhere(poset, move)


def format_move(poset: Poset, move: Move) -> str:
    """Render a move in input syntax: `(1,0)`, `a->b`, `=`, `(1)|=`."""
    if isinstance(move, Shift):
        return "(" + ",".join(str(s) for s in move.delta) + ")"
    if isinstance(move, Arrow):
        return f"{move.source}->{move.target}"
    if isinstance(move, Identity):
        return "="
    assert isinstance(poset, ProductPoset)
    return f"{format_move(poset.left, move.left)}|{format_move(poset.right, move.right)}"


def parse_move(poset: Poset, text: str) -> Move:
    """Parse a move for this poset.

    Raises:
        PresentationError: If the text is not a move of this poset.
    """
    body = text.strip()
    if isinstance(poset, IntegerLattice):
        try:
            coords = poset.parse_element(body)
        except PosetMembershipError as exc:
            raise PresentationError(f"bad shift {text!r}: {exc}") from exc
        move: Move = Shift(coords)  # type: ignore[arg-type]
    elif isinstance(poset, FiniteExplicitPoset):
        if body == "=":
            move = Identity()
        elif "->" in body:
            source, _, target = body.partition("->")
            move = Arrow(source.strip(), target.strip())
        else:
            raise PresentationError(f"bad finite move {text!r}")
    else:
        assert isinstance(poset, ProductPoset)
        move = _parse_product_move(poset, body)
    validate_move(poset, move)
    return move


def _parse_product_move(poset: ProductPoset, body: str) -> Move:
    for cut in [k for k, ch in enumerate(body) if ch == "|"]:
        try:
            return ProductMove(
                parse_move(poset.left, body[:cut]), parse_move(poset.right, body[cut + 1 :])
            )
        except PresentationError:
            continue
    raise PresentationError(f"bad product move {body!r}")
