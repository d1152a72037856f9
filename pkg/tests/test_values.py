"""Exact extended-rational value arithmetic and text round-trips."""

from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from topomeasure.values import (
    INF,
    UndefinedSubtraction,
    format_value,
    is_inf,
    parse_value,
    vadd,
    vsub,
    vsum,
)

rationals = st.fractions(
    min_value=-1000, max_value=1000, max_denominator=997
)


def test_infinity_arithmetic():
    assert is_inf(INF)
    assert vadd(INF, Fraction(3)) is INF
    assert vadd(Fraction(3), INF) is INF
    assert vsum([Fraction(1), INF, Fraction(2)]) is INF
    assert vsub(INF, Fraction(5)) is INF
    with pytest.raises(UndefinedSubtraction):
        vsub(INF, INF)
    with pytest.raises(UndefinedSubtraction):
        vsub(Fraction(1), INF)


def test_formatting():
    assert format_value(INF) == "inf"
    assert format_value(Fraction(1, 2)) == "1/2"
    assert format_value(Fraction(3)) == "3"
    assert parse_value("inf") is INF
    with pytest.raises(ValueError):
        parse_value("three")


@given(rationals)
def test_format_parse_roundtrip(q):
    assert parse_value(format_value(q)) == q


@given(rationals, rationals)
def test_exact_add_sub(a, b):
    assert vadd(a, b) == a + b
    assert vsub(a, b) == a - b
    assert vsum([a, b, a]) == 2 * a + b
