import random
from fractions import Fraction

import pytest

from germ_forge.parser import parse_poly
from germ_forge.poly import Poly

XYZ = ("x", "y", "z")


def P(text, vars=XYZ, field="real"):
    return parse_poly(text, vars, field, allow_t=False)


def random_poly(rng, vars, max_deg=6, n_terms=6, height=9, min_deg=0):
    terms = {}
    for _ in range(n_terms):
        d = rng.randint(min_deg, max_deg)
        e = [0] * len(vars)
        for _ in range(d):
            e[rng.randrange(len(vars))] += 1
        c = Fraction(rng.randint(-height, height), rng.randint(1, 3))
        if c:
            terms[tuple(e)] = terms.get(tuple(e), 0) + c
    return Poly(vars, terms)


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
