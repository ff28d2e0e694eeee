import pytest

from germ_forge.cascade import build_cascade, build_deformation, constant_family, pp_mul
from germ_forge.errors import MalformedFamily, TruncationTooCoarse
from germ_forge.poly import Poly
from germ_forge.series import PseudoPoly, TruncSeries

from conftest import P, XYZ


@pytest.fixture(scope="module")
def worked():
    return build_cascade([P("z^2 - x*y^4")], 12, seed=7)


def test_worked_example_level_data(worked):
    assert worked.degrees == (2, 5, 2, 0)
    assert worked.indices == (1, 4, 2)
    assert worked.level(2).f.to_series().body == P("y^5 - x*y^4")
    assert worked.level(1).f.to_series().body == P("x^2")
    assert worked.level(0).f.degree == 0
    assert worked.reconstruction_errors() == []


def test_worked_example_units(worked):
    assert worked.level(2).unit.body == Poly.constant(XYZ, -4)
    assert worked.level(1).unit.body == Poly.constant(XYZ, 24)
    assert worked.level(0).unit.body == Poly.constant(XYZ, 2)


def test_reconstruction_identity_term_exact(worked):
    for i in (2, 1, 0):
        lv = worked.level(i)
        assert (lv.unit * lv.f.to_series()).body == lv.disc.body


def test_cascade_is_deterministic():
    a = build_cascade([P("z^3 + x*y*z + y^5")], 10, seed=3)
    b = build_cascade([P("z^3 + x*y*z + y^5")], 10, seed=3)
    assert a == b


def test_non_distinguished_input_gets_a_change():
    ns = build_cascade([P("x*y*z + z^3*y + x^3")], 10, seed=1)
    assert not ns.change.is_identity()
    assert ns.reconstruction_errors() == []


def test_product_of_inputs():
    F = PseudoPoly.from_series(P("z - x"), 2)
    G = PseudoPoly.from_series(P("z + y"), 2)
    H = pp_mul(F, G)
    assert H.to_series().body == P("(z - x)*(z + y)")
    ns = build_cascade([F, G], 10)
    assert ns.level(3).f == H


def test_truncation_too_coarse():
    with pytest.raises(TruncationTooCoarse):
        build_cascade([P("z^2 - x*y^4")], 1, seed=7)


def test_deformation_split():
    ns = build_cascade([P("z^2 - x*(y^4 + x^6)")], 12, seed=7)
    fam = build_deformation(ns, 6)
    assert fam.vars == XYZ + ("t",)
    top = ns.level(3).f
    # changes are pushed into the top level, so compare in final coordinates
    assert [a.body for a in fam.at(0)[0].coeffs] == [a.body.truncate(6) for a in top.coeffs]
    at1 = fam.at(1)
    assert [F.to_series().body for F in at1] == [lv.f.to_series().body for lv in ns.levels]


def test_deformation_rejects_bad_input():
    ns = build_cascade([P("z^2 - x*y^4")], 12, seed=7)
    with pytest.raises(ValueError):
        build_deformation(ns, 12)
    tns = build_cascade([P("z^2 - x*t^4", ("x", "t", "z"))], 12, seed=7)
    with pytest.raises(MalformedFamily):
        build_deformation(tns, 3)


def test_constant_family(worked):
    fam = constant_family(worked)
    assert len(fam) == 4 and all(F.params == ("t",) for F in fam)


def test_smooth_input_terminates_at_once():
    ns = build_cascade([P("z")], 8)
    assert ns.degrees == (1, 0, 0, 0)
    assert ns.level(2).f.degree == 0 and ns.level(0).f.degree == 0


def test_normal_crossing():
    XZ = ("x", "z")
    ns = build_cascade([P("z - x", XZ), P("z + x", XZ)], 8)
    assert ns.level(2).f.to_series().body == P("z^2 - x^2", XZ)
    assert ns.level(2).j == 1 and ns.level(1).disc.body == P("4*x^2", XZ)
    assert ns.level(1).f.to_series().body == P("x^2", XZ)
    assert ns.level(0).f.degree == 0


def test_deformation_tail_in_final_coordinates():
    ns = build_cascade([P("z^2 - x*(y^4 + x^7)")], 12, seed=7)
    M = ns.change
    T = XYZ + ("t",)
    top = build_deformation(ns, 6).members[0].to_series().body
    expected = M.apply(P("z^2 - x*y^4")).with_vars(T) - P("t", T) * M.apply(P("x^8")).with_vars(T)
    assert top == expected


def test_deformation_with_empty_jet():
    ns = build_cascade([P("z^2 - x*y^4")], 12, seed=7)
    M = ns.change
    T = XYZ + ("t",)
    top = build_deformation(ns, 3).members[0].to_series().body
    assert top == P("z^2", T) - P("t", T) * M.apply(P("x*y^4")).with_vars(T)


def test_large_split_gives_constant_family():
    ns = build_cascade([P("z^2 - x*y^4")], 12, seed=7)
    fam = build_deformation(ns, 11)
    assert all(not any(a.body.involves(3) for a in F.coeffs) for F in fam.members)
