import math
import random
from fractions import Fraction

import pytest

from germ_forge.discriminants import (
    ORACLE_BOUND, _subresultant_discs, coeff_names, disc_normalization, distinct_root_count,
    first_nonvanishing, gcd_root_count, gen_disc_oracle, gen_discriminants, sylvester_psc, uderiv,
    univariate,
)
from germ_forge.parser import parse_poly
from germ_forge.poly import Poly
from germ_forge.series import PseudoPoly, TruncSeries, Vanishing

from conftest import P, XYZ


def A(p, text):
    return parse_poly(text, coeff_names(p), allow_t=False)


@pytest.mark.parametrize("p", range(1, ORACLE_BOUND + 1))
def test_top_discriminant_is_p_factorial(p):
    assert gen_disc_oracle(p, p) == Poly.constant(coeff_names(p), math.factorial(p))


def test_frozen_oracle_values():
    assert gen_disc_oracle(2, 1) == A(2, "a1^2 - 4*a2")
    assert gen_disc_oracle(3, 1) == A(3, "a1^2*a2^2 - 4*a2^3 - 4*a1^3*a3 + 18*a1*a2*a3 - 27*a3^2")
    # Delta_{p-1} = (p-2)! * ((p-1) e1^2 - 2p e2), with e1 = -a1, e2 = a2
    assert gen_disc_oracle(3, 2) == A(3, "2*a1^2 - 6*a2")
    assert gen_disc_oracle(4, 3) == A(4, "6*a1^2 - 16*a2")
    assert gen_disc_oracle(5, 4) == A(5, "24*a1^2 - 60*a2")


def test_quintic_example():
    # y^5 + c y^4 has four distinct roots for c != 0
    F = PseudoPoly.from_series(P("y^5 + x*y^4", ("x", "y")), 1)
    vec = gen_discriminants(F)
    assert vec.deltas[3].body == P("24*x^2", ("x", "y"))
    assert all(d.body.is_zero() for d in vec.deltas[:3])
    assert first_nonvanishing(F)[0] == 4


def test_subresultant_route_matches_oracle_symbolically():
    for p in range(1, ORACLE_BOUND + 1):
        names = coeff_names(p)
        gens = [Poly.var(names, a) for a in names]
        assert _subresultant_discs(gens) == [gen_disc_oracle(p, j) for j in range(1, p + 1)]


def test_normalization_constants():
    assert disc_normalization(2, 1) == -1
    assert disc_normalization(3, 3) == 2
    assert disc_normalization(4, 2) == -1


def test_sylvester_agrees_with_prs():
    rng = random.Random(4)
    for _ in range(60):
        p = rng.randint(2, 6)
        coeffs = [Fraction(rng.randint(-5, 5)) for _ in range(p)]
        f = [Fraction(1)] + coeffs
        fp = uderiv(f)
        got = _subresultant_discs([Poly.constant(("T",), c) for c in coeffs])
        for j in range(1, p + 1):
            expect = disc_normalization(p, j) * sylvester_psc(f, fp, j - 1)
            assert got[j - 1].constant_term() == expect


def random_with_multiplicities(rng):
    roots = rng.sample(range(-4, 5), rng.randint(1, 4))
    mults = [rng.randint(1, 3) for _ in roots]
    f = [Fraction(1)]
    for r, m in zip(roots, mults):
        for _ in range(m):
            f = [a - r * b for a, b in zip(f + [0], [0] + f)]
    return f, len(roots)


def test_distinct_root_criterion_on_products():
    rng = random.Random(6)
    for _ in range(80):
        f, d = random_with_multiplicities(rng)
        p = len(f) - 1
        for route in ("oracle", "subresultant") if p <= ORACLE_BOUND else ("subresultant",):
            F = univariate(f[1:])
            vec = gen_discriminants(F, route)
            pattern = vec.vanishing_pattern()
            assert all(v is Vanishing.EXACT_ZERO for v in pattern[: p - d])
            assert pattern[p - d] is Vanishing.NONZERO
            assert distinct_root_count(F, route) == d == gcd_root_count(f)


def test_top_discriminant_never_vanishes():
    # Delta_p = p! is a unit, so the scan always stops
    F = PseudoPoly(2, (TruncSeries(Poly.zero(XYZ), 0), TruncSeries(Poly.zero(XYZ), 0)), XYZ)
    assert first_nonvanishing(F)[0] == 2


def test_first_nonvanishing_qualifiers():
    F = PseudoPoly(2, (TruncSeries(Poly.zero(XYZ)), TruncSeries(P("x^3"))), XYZ)
    assert first_nonvanishing(F)[::2] == (1, "exact")
    G = PseudoPoly(2, (TruncSeries(Poly.zero(XYZ), 2), TruncSeries(Poly.zero(XYZ), 2)), XYZ)
    j, d, q = first_nonvanishing(G)
    assert (j, q) == (2, "to-order") and d.body.constant_term() == 2


def test_large_degree_uses_subresultants():
    F = univariate([0, 0, 0, 0, 0, -1])
    vec = gen_discriminants(F)
    assert vec.route == "subresultant" and vec.degree == 6
    assert distinct_root_count(F) == 6


def test_discriminants_of_the_cusp_pencil():
    F = PseudoPoly.from_series(P("z^2 - x*y^4"), 2)
    vec = gen_discriminants(F)
    assert vec.deltas[0].body == P("4*x*y^4")
    assert vec.deltas[1].body == P("2")
    assert first_nonvanishing(F)[:2] == (1, vec.deltas[0])


@pytest.mark.parametrize("p", [1, 2, 3, 4, 5, 6])
def test_pure_power_has_one_root(p):
    F = univariate([0] * p)
    pattern = gen_discriminants(F).vanishing_pattern()
    assert all(v is Vanishing.EXACT_ZERO for v in pattern[:-1])
    assert pattern[-1] is Vanishing.NONZERO
