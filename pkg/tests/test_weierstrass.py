import random
from fractions import Fraction

import pytest

from germ_forge.errors import NotRegular
from germ_forge.poly import Poly
from germ_forge.series import TruncSeries, find_regular_direction
from germ_forge.weierstrass import series_inverse, weierstrass_prepare

from conftest import P, XYZ, random_poly

XY = ("x", "y")


def test_prepare_monomial_times_regular_part():
    lam = Fraction(3)
    f = P("12*y^5 + 4*x*y^4", XY)
    u, W = weierstrass_prepare(f, 1, 5, 10)
    assert u.body == Poly.constant(XY, 4 * lam) and u.is_exact
    assert W.to_series().body == P("y^5 + 1/3*x*y^4", XY)


def test_prepare_pure_power():
    u, W = weierstrass_prepare(P("z^4"), 2, 4, 8)
    assert u.body == Poly.constant(XYZ, 1)
    assert W.to_series().body == P("z^4")


def test_prepare_constant_unit():
    f = P("24*x^2", ("x",))
    u, W = weierstrass_prepare(f, 0, 2, 12)
    assert u.body.constant_term() == 24
    assert W.degree == 2 and all(a.body.is_zero() for a in W.coeffs)


def test_series_inverse():
    u = P("2 + x - y^2", XY)
    inv = series_inverse(u, 6)
    assert (u * inv).truncate(6) == Poly.constant(XY, 1)


def test_not_regular():
    with pytest.raises(NotRegular):
        weierstrass_prepare(P("x*y", XY), 1, 2, 6)


def test_random_identity():
    rng = random.Random(8)
    for _ in range(25):
        f = random_poly(rng, XYZ, 7, 7, min_deg=2)
        if f.ord() is None:
            continue
        change, p = find_regular_direction(f, 2, seed=rng.randint(0, 99))
        g = change.apply(f)
        u, W = weierstrass_prepare(g, 2, p, 9)
        assert (u.body * W.to_series().body - g).truncate(9).is_zero()
        assert W.is_distinguished() and u.is_unit()
        assert all(a.order is None or a.order >= 9 - p + j for j, a in enumerate(W.coeffs, 1))
