from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from zdg.catalog import catalog
from zdg.descriptor import GF, IdealPower, Poly, Product, Quotient, Zn, canonical, parse_descriptor
from zdg.errors import ParseError, UnsupportedConstruction


def test_quotient_with_two_relations():
    desc = parse_descriptor("Z4[x]/(2x,x^2-2)")
    assert isinstance(desc, Quotient)
    assert desc.base == Zn(4)
    assert str(desc) == "Z4[x]/(2x,x^2-2)"
    assert [str(g) for g in desc.generators()] == ["2x", "x^2-2"]


def test_product_is_flat_and_left_associative():
    desc = parse_descriptor("Z2xZ3xZ3")
    assert desc == Product((Zn(2), Zn(3), Zn(3)))


def test_whitespace_and_case_insensitive():
    assert canonical(parse_descriptor(" z4 [ X ] / ( 2X , X^2 - 2 ) ".replace("z4", "Z4"))) == "Z4[x]/(2x,x^2-2)"


def test_ideal_power_forms():
    a = parse_descriptor("Z2[x,y]/((x,y)^2)")
    b = parse_descriptor("Z2[x,y]/(x,y)^2")
    assert a == b
    assert isinstance(a.relations[0], IdealPower)
    assert str(a) == "Z2[x,y]/((x,y)^2)"
    assert [str(g) for g in a.generators()] == ["x^2", "xy", "y^2"]


def test_gf_base_and_products():
    desc = parse_descriptor("GF(4)[x]/(x^2)xZ3")
    assert isinstance(desc, Product)
    assert desc.factors[0].base == GF(4)


@pytest.mark.parametrize("text", ["Z4[x]/()", "Z", "Z4[x]/(x^2", "GF(4", "Z4x", "", "Z4[x]/(x^2)junk", "Q5"])
def test_parse_errors_carry_position(text):
    with pytest.raises(ParseError) as info:
        parse_descriptor(text)
    assert info.value.position is not None


@pytest.mark.parametrize("text", ["GF(6)", "Z1", "Z0", "GF(12)"])
def test_unsupported_construction(text):
    with pytest.raises(UnsupportedConstruction):
        parse_descriptor(text)


def test_catalog_round_trip():
    for e in catalog(100):
        assert canonical(parse_descriptor(e.descriptor)) == e.descriptor


def test_poly_multiplication():
    x = Poly.from_dict(1, {(1,): 1})
    assert str(x * x) == "x^2"
    p = Poly.from_dict(1, {(2,): 1, (0,): -2})
    assert str(p) == "x^2-2"


@given(st.lists(st.sampled_from(["Z2", "Z9", "GF(4)", "Z3[x]/(x^2)", "Z4[x]/(2x,x^2-2)"]), min_size=1, max_size=3))
def test_canonical_is_a_fixed_point(parts):
    text = "x".join(parts)
    once = canonical(parse_descriptor(text))
    assert canonical(parse_descriptor(once)) == once
