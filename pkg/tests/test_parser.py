import random

import pytest
from hypothesis import given, settings, strategies as st

from germ_forge.parser import ParseError, parse_list, parse_poly, tokenize
from germ_forge.poly import Poly
from germ_forge.scalars import COMPLEX, I

from conftest import XYZ, random_poly


def test_precedence_and_associativity():
    assert parse_poly("2^3^2", ()) == Poly.constant((), 512)
    assert parse_poly("-x^2", ("x",)) == -Poly.var(("x",), "x") ** 2
    assert parse_poly("x**2 - 1/2*x", ("x",)).to_str() == "x^2 - 1/2*x"


def test_perturbed_input_prints_canonically():
    p = parse_poly("z^2 - x*(y^4 + x^6)", XYZ)
    assert p.to_str() == "-x^7 - x*y^4 + z^2"
    assert parse_poly(p.to_str(), XYZ) == p


def test_parameter_t_is_appended():
    p = parse_poly("x + t*y", ("x", "y"))
    assert p.vars == ("x", "y", "t")
    with pytest.raises(ParseError):
        parse_poly("x + t", ("x",), allow_t=False)


def test_undeclared_identifier_position():
    with pytest.raises(ParseError) as info:
        parse_poly("x +\n  2*w", ("x",))
    assert info.value.line == 2 and info.value.column == 5
    assert "undeclared identifier 'w'" in str(info.value)


@pytest.mark.parametrize("text", ["x +", "(x", "x^y", "x^(-1)", "x $ y", "3/0", ""])
def test_rejects_malformed(text):
    with pytest.raises(ParseError):
        parse_poly(text, ("x", "y"))


def test_imaginary_unit_only_in_complex_mode():
    with pytest.raises(ParseError, match="complex"):
        parse_poly("i*x", ("x",))
    p = parse_poly("(1 + i)^2*x", ("x",), COMPLEX)
    assert p.terms == {(1,): 2 * I}
    with pytest.raises(ValueError):
        parse_poly("i", ("i",), COMPLEX)


def test_arc_literal_list():
    comps = parse_list("t, 0, (t + t^2)^2", ("t",))
    assert [c.to_str() for c in comps] == ["t", "0", "t^4 + 2*t^3 + t^2"]


def test_tokens_carry_positions():
    toks = tokenize("x*y")
    assert [(t.text, t.column) for t in toks[:3]] == [("x", 1), ("*", 2), ("y", 3)]


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_print_parse_roundtrip(seed):
    rng = random.Random(seed)
    vars = XYZ[: rng.randint(1, 3)]
    f = random_poly(rng, vars, 7, 7, height=50)
    assert parse_poly(f.to_str(), vars, allow_t=False) == f


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_complex_roundtrip(seed):
    rng = random.Random(seed)
    f = random_poly(rng, ("x", "y"), 5, 5).with_field(COMPLEX)
    g = random_poly(rng, ("x", "y"), 5, 5).with_field(COMPLEX)
    h = f + g * I
    assert parse_poly(h.to_str(), ("x", "y"), COMPLEX, allow_t=False) == h


def test_zero_literal():
    assert parse_poly("0", XYZ).is_zero()
