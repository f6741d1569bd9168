"""Unit tests for equation and combination parsing."""
import random

import pytest

from radokit_core.exceptions import InvalidEquation, ParseError, SemanticError
from radokit_core.expr import (
    UltraExpr,
    canonical_combination,
    combinations_equal,
    format_combination,
    parse_combination,
    parse_equation,
    pseudo_sum,
    scale,
)
from radokit_core.ueq_core import reduce


class TestParseEquation:
    """Tests for equation parsing."""

    def test_golden_equation(self):
        parsed = parse_equation("3x1+x2+x3-x4-4x5=0")
        assert parsed.eq.c == (3, 1, 1, -1, -4)
        assert parsed.variable_names == ("x1", "x2", "x3", "x4", "x5")

    @pytest.mark.parametrize("text, coeffs", [
        ("x + y - 2z = 0", (1, 1, -2)),
        ("2*x - y - z = 0", (2, -1, -1)),
        ("-x+y=0", (-1, 1)),
        ("  a_1 + 10 b - 11c=0 ", (1, 10, -11)),
    ])
    def test_accepted_forms(self, text, coeffs):
        assert parse_equation(text).eq.c == coeffs

    def test_missing_equals_sign(self):
        with pytest.raises(ParseError):
            parse_equation("x+y-2z")

    def test_error_position(self):
        with pytest.raises(ParseError) as exc_info:
            parse_equation("x + @")
        assert exc_info.value.position == 5
        assert "column 5" in str(exc_info.value)

    def test_trailing_garbage(self):
        with pytest.raises(ParseError):
            parse_equation("x+y-2z=0 z")

    def test_repeated_variable(self):
        with pytest.raises(SemanticError):
            parse_equation("x+x-2z=0")

    def test_zero_coefficient(self):
        with pytest.raises(SemanticError):
            parse_equation("x+0y-z=0")

    def test_nonzero_right_hand_side(self):
        with pytest.raises(SemanticError):
            parse_equation("x+y=1")

    def test_single_variable(self):
        with pytest.raises(InvalidEquation):
            parse_equation("x=0")


class TestParseCombination:
    """Tests for combination parsing and printing."""

    @pytest.mark.parametrize("text, coeffs", [
        ("2U (+) U", (2, 1)),
        ("U", (1,)),
        ("3*U(+)0U", (3, 0)),
    ])
    def test_accepted_forms(self, text, coeffs):
        assert parse_combination(text).coeffs == coeffs

    def test_other_symbol(self):
        with pytest.raises(ParseError) as exc_info:
            parse_combination("2U (+) 3V")
        assert exc_info.value.position == 9

    def test_negative_coefficient(self):
        with pytest.raises(SemanticError):
            parse_combination("-2U")

    def test_dangling_operator(self):
        with pytest.raises(ParseError):
            parse_combination("2U (+)")

    def test_format(self):
        assert format_combination(UltraExpr((2, 1))) == "2U (+) U"
        assert format_combination(UltraExpr(())) == "0U"

    def test_round_trip_on_canonical_forms(self):
        rng = random.Random(3)
        for _ in range(200):
            coeffs = reduce(tuple(rng.randint(1, 5) for _ in range(rng.randint(1, 6))))
            e = UltraExpr(coeffs)
            assert parse_combination(format_combination(e)) == e

    def test_empty_round_trips_up_to_normal_form(self):
        e = parse_combination(format_combination(UltraExpr(())))
        assert canonical_combination(e) == UltraExpr(())


class TestCombinationAlgebra:
    """Tests for equality and combination operations."""

    def test_equality(self):
        left = parse_combination("2U (+) U")
        assert combinations_equal(left, parse_combination("2U (+) 2U (+) U (+) 0U"))
        assert not combinations_equal(left, parse_combination("U (+) 2U"))

    def test_canonical(self):
        e = parse_combination("0U (+) 2U (+) 2U (+) U")
        assert canonical_combination(e).coeffs == (2, 1)

    def test_pseudo_sum_and_scale(self):
        e1 = parse_combination("2U")
        e2 = parse_combination("2U (+) U")
        assert pseudo_sum(e1, e2).coeffs == (2, 2, 1)
        assert combinations_equal(pseudo_sum(e1, e2), e2)
        assert scale(3, e2).coeffs == (6, 3)
        assert scale(0, e2).coeffs == (0, 0)
        with pytest.raises(SemanticError):
            scale(-1, e2)

    def test_scale_respects_equality(self):
        e1 = parse_combination("U (+) U (+) 4U")
        e2 = parse_combination("U (+) 4U")
        for h in range(4):
            assert combinations_equal(scale(h, e1), scale(h, e2))
