"""Exact coefficient fields: the rationals and prime fields F_p."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from src.shared.errors import PresentationError
from src.shared.types import FieldKind

Scalar = Fraction | int

PRIME_CEILING = 2**31


def is_prime(n: int) -> bool:
    """Trial-division primality test for word-sized moduli.

    Args:
        n: Candidate modulus.

    Returns:
        True if n is prime.
    """
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    return all(n % f for f in range(3, math.isqrt(n) + 1, 2))


@dataclass(frozen=True)
class FieldSpec:
    """A computable field with exact arithmetic.

    Rational elements are Fractions; F_p elements are ints in [0, p).

    Attributes:
        kind: Rationals or a prime field.
        characteristic: 0 for the rationals, p otherwise.
    """

    kind: FieldKind
    characteristic: int = 0

    def __post_init__(self) -> None:
        if self.kind == FieldKind.RATIONALS and self.characteristic != 0:
            raise PresentationError("the rationals have characteristic 0")
        if self.kind == FieldKind.PRIME:
            p = self.characteristic
            if not (is_prime(p) and p < PRIME_CEILING):
                raise PresentationError(f"Fp needs a prime p < 2^31, got {p}")

    @classmethod
    def rationals(cls) -> FieldSpec:
        """Return the field Q."""
        return cls(FieldKind.RATIONALS)

    @classmethod
    def prime(cls, p: int) -> FieldSpec:
        """Return the prime field F_p."""
        return cls(FieldKind.PRIME, p)

    @classmethod
    def parse(cls, text: str) -> FieldSpec:
        """Parse `Q`, `Fp 101` or `Fp101`.

        Args:
            text: Field declaration text.

        Returns:
            The declared field.

        Raises:
            PresentationError: If the text names no supported field.
        """
        token = text.strip()
        if token == "Q":
            return cls.rationals()
        if token.startswith("Fp"):
            rest = token[2:].strip()
            if rest.isdigit():
                return cls.prime(int(rest))
        raise PresentationError(f"unknown field: {text!r}")

    @property
    def is_rational(self) -> bool:
        """True for Q."""
        return self.kind == FieldKind.RATIONALS

    def label(self) -> str:
        """Return the declaration text of this field."""
        return "Q" if self.is_rational else f"Fp {self.characteristic}"

    def zero(self) -> Scalar:
        """Additive identity."""
        return Fraction(0) if self.is_rational else 0

    def one(self) -> Scalar:
        """Multiplicative identity."""
        return Fraction(1) if self.is_rational else 1

    def coerce(self, value: int | Fraction | str) -> Scalar:
        """Map an integer, fraction or numeric string into the field.

        Args:
            value: Value to convert (`"3/4"` style strings allowed).

        Returns:
            Field element.

        Raises:
            ZeroDivisionError: If a fraction's denominator vanishes mod p.
        """
        q = Fraction(value)
        if self.is_rational:
            return q
        p = self.characteristic
        if q.denominator % p == 0:
            raise ZeroDivisionError(f"{value} is undefined in F_{p}")
        return q.numerator * pow(q.denominator, -1, p) % p

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        """Return a + b."""
        if self.is_rational:
            return a + b
        return (a + b) % self.characteristic

    def sub(self, a: Scalar, b: Scalar) -> Scalar:
        """Return a - b."""
        if self.is_rational:
            return a - b
        return (a - b) % self.characteristic

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        """Return a * b."""
        if self.is_rational:
            return a * b
        return a * b % self.characteristic

    def neg(self, a: Scalar) -> Scalar:
        """Return -a."""
        if self.is_rational:
            return -a
        return -a % self.characteristic

    def inv(self, a: Scalar) -> Scalar:
        """Return 1 / a.

        Raises:
            ZeroDivisionError: If a is zero.
        """
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.is_rational:
            return 1 / Fraction(a)
        return pow(int(a), -1, self.characteristic)

    def format(self, a: Scalar) -> str:
        """Render an element (`3`, `-1/2`, or an F_p residue)."""
        if self.is_rational:
            f = Fraction(a)
            return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"
        return str(int(a))
