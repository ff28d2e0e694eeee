import math
from fractions import Fraction

import pytest

from germ_forge.arcs import (
    EXACT_WITNESS, LIFT_IMPOSSIBLE, UNKNOWN, VALUATION_OBSTRUCTION, TruncatedArc, compare_arc_spaces,
    compose_arc, composed_order, field_roots, jet_equations, member_trunc, replay_certificate,
    sturm_real_root_count, valuation_obstruction,
)
from germ_forge.parser import parse_list, parse_poly
from germ_forge.scalars import COMPLEX, I, REAL
from germ_forge.series import jet

from conftest import P, XYZ

FIELDS = (REAL, COMPLEX)


def arc(text, m, field=REAL):
    return TruncatedArc(tuple(parse_list(text, ("t",), field)), m, field)


def fk(k):
    return P(f"z^2 - x*(y^4 + x^{2 * k})")


def test_arc_validation():
    with pytest.raises(ValueError):
        arc("1 + t, 0", 1)
    with pytest.raises(ValueError):
        arc("t^3, 0", 2)
    a = TruncatedArc.from_coeffs([[1, 2], [0, -1]], 2)
    assert str(a) == "2*t^2 + t, -t^2" and a.coeff(1, 2) == -1


def test_compose_examples():
    t = arc("t, 0, 0", 1)
    assert compose_arc(P("z^2 - x*y^4"), t.components).is_zero()
    assert compose_arc(fk(1), t.components) == -parse_poly("t^3", ("t",))
    assert composed_order(fk(9), t.components) == 19
    assert composed_order(P("z^2 - x*y^4"), t.components) == math.inf


def test_jet_equation_examples():
    js = jet_equations(P("z^2 - x", ("x", "z")), 2)
    assert [e.to_str() for e in js.equations] == ["-c_x_1", "c_z_1^2 - c_x_2"]
    js = jet_equations(P("x1", ("x1",)), 3)
    assert [e.to_str() for e in js.equations] == ["c_x1_1", "c_x1_2", "c_x1_3"]
    js = jet_equations(P("z^2 - x*y^4"), 1)
    assert [e.to_str() for e in js.equations] == ["0"]


def test_jet_equations_vanish_on_true_arcs():
    f = P("z^2 - x^3", ("x", "z"))
    gamma = arc("t^2, t^3", 3)
    js = jet_equations(f, 6)
    assignment = {}
    for j, v in enumerate(("x", "z")):
        for i in range(1, 7):
            assignment[f"c_{v}_{i}"] = gamma.coeff(j, i)
    assert js.satisfied_by(assignment)


@pytest.mark.parametrize("field", FIELDS)
def test_line_arc_on_f(field):
    c = member_trunc(P("z^2 - x*y^4"), arc("t, 0, 0", 1, field), 12, field)
    assert c.kind == EXACT_WITNESS and c.positive
    assert replay_certificate(P("z^2 - x*y^4"), c)


@pytest.mark.parametrize("field", FIELDS)
@pytest.mark.parametrize("k", [1, 3, 5, 7, 9])
def test_line_arc_off_fk(field, k):
    f = fk(k)
    c = member_trunc(f, arc("t, 0, 0", 1, field), 12, field)
    assert c.kind == VALUATION_OBSTRUCTION and c.negative
    assert replay_certificate(f, c)
    # f_k and f share their 2k-jet; for 2k >= 5 that jet is f itself
    assert jet(f, 2 * k) == jet(P("z^2 - x*y^4"), 2 * k)
    if k >= 3:
        assert jet(f, 2 * k) == P("z^2 - x*y^4")


def test_obstruction_groups_have_opposite_parity():
    groups = valuation_obstruction(fk(3), arc("t, 0, 0", 1))["groups"]
    assert len(groups) == 2
    a, b = (g["orders"] for g in groups)
    assert a.disjoint(b)


@pytest.mark.parametrize("field", FIELDS)
def test_even_k_refuted(field):
    c = member_trunc(fk(2), arc("t, 0, 0", 1, field), 12, field)
    assert c.negative
    assert replay_certificate(fk(2), c)


def test_field_matters():
    g = P("z^2 + x^4", ("x", "z"))
    real = member_trunc(g, arc("t, 0", 1), 8, REAL)
    assert real.kind == LIFT_IMPOSSIBLE and real.payload["degree"] == 4
    assert replay_certificate(g, real)
    cplx = member_trunc(g, arc("t, 0", 1, COMPLEX), 8, COMPLEX)
    assert cplx.kind == EXACT_WITNESS
    assert cplx.payload["witness"].components[1] in (parse_poly("i*t^2", ("t",), COMPLEX), parse_poly("-i*t^2", ("t",), COMPLEX))
    assert replay_certificate(g, cplx)


@pytest.mark.parametrize("field", FIELDS)
def test_parabola_rejects_arc_along_x(field):
    # z^2 has even order while x has order exactly 1
    h = P("z^2 - x", ("x", "z"))
    c = member_trunc(h, arc("-t, 0", 1, field), 4, field)
    assert c.kind == VALUATION_OBSTRUCTION
    assert replay_certificate(h, c)


def test_implicit_function_witness():
    s = P("z - x - z^3", ("x", "z"))
    c = member_trunc(s, arc("t, t", 1), 8)
    assert c.kind == EXACT_WITNESS and c.payload["method"] == "implicit-function"
    assert replay_certificate(s, c)


def test_small_lift_order_is_unknown():
    # (t^2, t^3) lies on the cusp, but the z coefficient is only pinned at degree 6
    f = P("z^2 - x^3", ("x", "z"))
    c = member_trunc(f, arc("t^2, 0", 2), 3)
    assert c.kind == UNKNOWN and not c.definite
    c = member_trunc(f, arc("t^2, 0", 2), 6)
    assert c.kind == EXACT_WITNESS
    assert c.payload["witness"].components[1].to_str() in ("t^3", "-t^3")


def test_root_helpers():
    assert sturm_real_root_count([1, 0, -2]) == 2
    assert sturm_real_root_count([1, 0, 1]) == 0
    assert set(field_roots([1, 0, 1], COMPLEX)) == {I, -I}
    assert field_roots([1, 0, 1], REAL) == []
    assert sorted(field_roots([2, -1, -1], REAL)) == [Fraction(-1, 2), 1]


def test_compare_spaces_detects_difference():
    f, g = P("z^2 - x*y^4"), fk(3)
    report = compare_arc_spaces(f, g, 1, 12, [arc("t, 0, 0", 1), arc("0, 0, t", 1)])
    assert report.spaces_differ
    assert report.entries[0].status == "disagree"


def test_membership_is_deterministic():
    f = fk(4)
    a = member_trunc(f, arc("t, 0, 0", 1), 12)
    b = member_trunc(f, arc("t, 0, 0", 1), 12)
    assert a == b


def test_replay_rejects_tampered_certificate():
    f = fk(3)
    c = member_trunc(f, arc("t, 0, 0", 1), 12)
    assert not replay_certificate(P("z^2 - x*y^4"), c)


def test_comparison_reflexive_and_jet_equal():
    f = P("z^2 - x*y^4")
    arcs = [arc("t, 0, 0", 1), arc("0, t, 0", 1), arc("t, t, 0", 1)]
    for g in (f, jet(fk(3), 6)):
        report = compare_arc_spaces(f, g, 1, 12, arcs)
        assert report.count("disagree") == 0 and not report.spaces_differ
