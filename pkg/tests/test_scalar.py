"""
Tests for exact Q(√2, √3) arithmetic.
"""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings

from sumform.errors import FieldDivisionError, ScalarError
from sumform.scalar import (
    ONE,
    SQRT2,
    SQRT3,
    SQRT6,
    Backend,
    Scalar,
    field_sign,
    format_scalar,
    make_rational,
    parse_scalar,
)
from tests.strategies import exact_scalars, nonzero_scalars


class TestConstruction:
    """Tests for building scalars."""

    def test_rational_is_reduced(self):
        """Test that rationals are stored reduced."""
        assert make_rational(2, 4) == Scalar.rational(1, 2)
        assert make_rational(2, 4).rational_value() == Fraction(1, 2)

    def test_zero_denominator(self):
        """Test zero denominator error code."""
        with pytest.raises(ScalarError) as exc:
            make_rational(3, 0)
        assert exc.value.code == "zero-denominator"

    def test_exact_rejects_floats(self):
        """Test that exact coordinates cannot be floats."""
        with pytest.raises(ScalarError) as exc:
            Scalar.exact(0.5)
        assert exc.value.code == "backend-mismatch"

    def test_of_coerces_python_numbers(self):
        """Test coercion of ints, Fractions, floats and text."""
        assert Scalar.of(3) == Scalar.rational(3)
        assert Scalar.of(Fraction(1, 3)) == Scalar.rational(1, 3)
        assert Scalar.of(0.25).backend is Backend.FLOAT
        assert Scalar.of("1/2*r2") == Scalar.exact(0, Fraction(1, 2))

    def test_not_rational(self):
        """Test rational_value on an irrational scalar."""
        with pytest.raises(ScalarError) as exc:
            SQRT2.rational_value()
        assert exc.value.code == "not-rational"


class TestArithmetic:
    """Tests for field operations."""

    def test_radical_products(self):
        """Test the basis multiplication table."""
        assert SQRT2 * SQRT2 == Scalar.rational(2)
        assert SQRT2 * SQRT3 == SQRT6
        assert SQRT6 * SQRT2 == 2 * SQRT3
        assert SQRT3 * SQRT6 == 3 * SQRT2
        assert SQRT6 * SQRT6 == Scalar.rational(6)

    def test_inverse(self):
        """Test inverses through conjugation."""
        assert (1 + SQRT2).inverse() == SQRT2 - 1
        assert (SQRT2 + SQRT3).inverse() == SQRT3 - SQRT2
        assert ONE / SQRT6 == SQRT6 / 6

    def test_division_by_zero(self):
        """Test division by an exact zero."""
        with pytest.raises(FieldDivisionError) as exc:
            SQRT2 / Scalar.rational(0)
        assert exc.value.code == "division-by-zero"
        assert isinstance(exc.value, ZeroDivisionError)

    def test_integer_powers(self):
        """Test positive and negative integer powers."""
        assert SQRT2 ** 4 == Scalar.rational(4)
        assert (1 + SQRT2) ** -1 == SQRT2 - 1
        assert Scalar.rational(1, 2) ** 0 == ONE

    def test_non_integer_power(self):
        """Test that fractional exponents are rejected."""
        with pytest.raises(ScalarError) as exc:
            SQRT2 ** 0.5
        assert exc.value.code == "non-integer-exponent"

    def test_backends_never_mix(self):
        """Test exact and float operands do not combine."""
        with pytest.raises(ScalarError) as exc:
            Scalar.rational(1) + Scalar.from_float(1.0)
        assert exc.value.code == "backend-mismatch"
        with pytest.raises(ScalarError):
            Scalar.rational(1) * 0.5

    def test_float_backend(self):
        """Test float arithmetic with Python numbers."""
        x = Scalar.from_float(0.5)
        assert (x + 1).value == 1.5
        assert (x * 3).value == 1.5
        assert (1 / x).value == 2.0

    @settings(max_examples=60, deadline=None)
    @given(exact_scalars(), exact_scalars(), exact_scalars())
    def test_ring_axioms(self, a, b, c):
        """Test associativity and distributivity."""
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + b - b == a

    @settings(max_examples=60, deadline=None)
    @given(nonzero_scalars())
    def test_inverse_property(self, a):
        """Test a * a^-1 = 1."""
        assert a * a.inverse() == ONE


class TestSign:
    """Tests for exact sign decisions."""

    def test_rational_approximations_of_sqrt2(self):
        """Test signs next to √2."""
        assert field_sign(SQRT2 - Fraction(99, 70)) == -1
        assert field_sign(SQRT2 - Fraction(1393, 985)) == 1
        assert field_sign(SQRT2 - SQRT2) == 0

    def test_ordering(self):
        """Test comparison operators."""
        assert SQRT2 < Scalar.rational(3, 2)
        assert SQRT3 > SQRT2
        assert SQRT6 >= SQRT2 * SQRT3
        assert abs(1 - SQRT2) == SQRT2 - 1

    @settings(max_examples=100, deadline=None)
    @given(exact_scalars())
    def test_sign_matches_value(self, a):
        """Test field_sign against the accurate float value."""
        value = a.to_float()
        assert a.sign() == (value > 0) - (value < 0)


class TestConversion:
    """Tests for float conversion."""

    def test_to_float(self):
        """Test float values of radicals."""
        assert SQRT2.to_float() == pytest.approx(math.sqrt(2), abs=1e-15)
        assert SQRT6.as_float().backend is Backend.FLOAT

    def test_to_float_under_cancellation(self):
        """Test relative accuracy of a tiny difference."""
        x = SQRT2 - Fraction(1393, 985)
        assert x.to_float() == pytest.approx(math.sqrt(2) - 1393 / 985, rel=1e-6)

    def test_like(self):
        """Test moving scalars between backends."""
        f = Scalar.from_float(0.5)
        assert Scalar.rational(1, 4).like(f).value == 0.25
        with pytest.raises(ScalarError):
            f.like(Scalar.rational(1))


class TestTextForm:
    """Tests for format_scalar / parse_scalar."""

    def test_format(self):
        """Test canonical text forms."""
        assert format_scalar(Scalar.exact(1, Fraction(-1, 2))) == "1 - 1/2*r2"
        assert str(SQRT6) == "r6"
        assert str(-SQRT2) == "-r2"
        assert str(Scalar.exact(-2, 0, 3)) == "-2 + 3*r3"
        assert str(Scalar.rational(0)) == "0"

    def test_parse(self):
        """Test parsing of text forms."""
        assert parse_scalar("1 - 1/2*r2") == Scalar.exact(1, Fraction(-1, 2))
        assert parse_scalar("r3") == SQRT3
        assert parse_scalar("-3/4") == Scalar.rational(-3, 4)
        assert parse_scalar("0.5").backend is Backend.FLOAT

    def test_parse_errors(self):
        """Test parse error codes."""
        with pytest.raises(ScalarError) as exc:
            parse_scalar("abc")
        assert exc.value.code == "parse-error"
        with pytest.raises(ScalarError) as exc:
            parse_scalar("1/0")
        assert exc.value.code == "zero-denominator"
        with pytest.raises(ScalarError):
            parse_scalar("1/2r2")

    def test_float_text_keeps_bits(self):
        """Test float repr round trip."""
        x = Scalar.from_float(0.1 + 0.2)
        assert parse_scalar(str(x)).value == x.value

    @settings(max_examples=100, deadline=None)
    @given(exact_scalars())
    def test_text_round_trip(self, a):
        """Test parse(format(a)) == a."""
        assert parse_scalar(format_scalar(a)) == a
