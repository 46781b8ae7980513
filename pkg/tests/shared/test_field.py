"""Tests for exact coefficient fields."""

from fractions import Fraction

import pytest

from src.shared.errors import PresentationError
from src.shared.field import FieldSpec, is_prime
from src.shared.types import FieldKind


class TestParse:
    """Field declarations."""

    def test_rationals(self) -> None:
        """`Q` is the rationals."""
        f = FieldSpec.parse("Q")
        assert f.is_rational
        assert f.label() == "Q"

    def test_prime_with_space(self) -> None:
        """`Fp 7` is F_7."""
        f = FieldSpec.parse("Fp 7")
        assert f.characteristic == 7
        assert f.label() == "Fp 7"

    def test_prime_without_space(self) -> None:
        """`Fp101` is F_101."""
        assert FieldSpec.parse("Fp101") == FieldSpec.prime(101)

    def test_rejects_composite(self) -> None:
        """A composite modulus is not a field."""
        with pytest.raises(PresentationError):
            FieldSpec.parse("Fp 8")

    def test_rejects_unknown(self) -> None:
        """Unknown field names raise."""
        with pytest.raises(PresentationError):
            FieldSpec.parse("R")

    def test_rejects_rationals_with_characteristic(self) -> None:
        """The rationals cannot carry a characteristic."""
        with pytest.raises(PresentationError):
            FieldSpec(FieldKind.RATIONALS, 3)


class TestArithmetic:
    """Exact arithmetic."""

    def test_rational_coerce_fraction_string(self) -> None:
        """Fraction strings coerce exactly over Q."""
        assert FieldSpec.rationals().coerce("3/4") == Fraction(3, 4)

    def test_prime_coerce_fraction(self) -> None:
        """1/2 in F_7 is 4."""
        assert FieldSpec.prime(7).coerce("1/2") == 4

    def test_prime_coerce_negative(self) -> None:
        """-1 in F_7 is 6."""
        assert FieldSpec.prime(7).coerce(-1) == 6

    def test_prime_coerce_undefined(self) -> None:
        """1/7 does not exist in F_7."""
        with pytest.raises(ZeroDivisionError):
            FieldSpec.prime(7).coerce("1/7")

    def test_inverse(self) -> None:
        """3 * 5 = 1 in F_7."""
        f = FieldSpec.prime(7)
        assert f.inv(3) == 5
        assert f.mul(3, f.inv(3)) == 1

    def test_inverse_of_zero(self) -> None:
        """Zero has no inverse."""
        with pytest.raises(ZeroDivisionError):
            FieldSpec.rationals().inv(Fraction(0))

    def test_add_sub_wrap(self) -> None:
        """Prime-field sums and differences wrap around."""
        f = FieldSpec.prime(5)
        assert f.add(3, 4) == 2
        assert f.sub(1, 3) == 3
        assert f.neg(2) == 3

    def test_format(self) -> None:
        """Rationals print in lowest terms."""
        q = FieldSpec.rationals()
        assert q.format(Fraction(-1, 2)) == "-1/2"
        assert q.format(Fraction(4, 2)) == "2"
        assert FieldSpec.prime(7).format(3) == "3"


class TestIsPrime:
    """Primality of moduli."""

    def test_small_primes(self) -> None:
        """2, 3 and 101 are prime."""
        assert is_prime(2)
        assert is_prime(3)
        assert is_prime(101)

    def test_composites(self) -> None:
        """1, 91 and 100 are not prime."""
        assert not is_prime(1)
        assert not is_prime(91)
        assert not is_prime(100)
