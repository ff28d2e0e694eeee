import math

from germ_forge.valuation import ValSet, group_set, monomial_set, separated, union


def test_membership():
    s = ValSet(3, 2, False)
    assert s.contains(5) and not s.contains(4) and not s.contains(1)
    assert not s.contains(math.inf)
    assert ValSet.tail(1).contains(math.inf) and ValSet.tail(1).contains(2)
    assert not ValSet.tail(1).contains(1)


def test_arithmetic():
    assert ValSet.point(1).scale(2) + ValSet(2, 2) == ValSet(4, 2)
    assert ValSet(1, 4) + ValSet(0, 6) == ValSet(1, 2)
    assert monomial_set((1, 4, 0), [ValSet.point(1), ValSet.tail(1), ValSet.tail(1)]) == ValSet(9, 4, True)


def test_disjoint_parity():
    odd = ValSet(1, 2, True)
    even = ValSet(2, 2, False)
    assert odd.disjoint(even)
    assert not ValSet(1, 1).disjoint(even)
    assert ValSet.point(3).disjoint(ValSet.point(4))


def test_union_and_groups():
    assert union([ValSet.point(2), ValSet.point(6)]) == ValSet(2, 4, False)
    assert group_set([ValSet(2, 2, True), ValSet(3, 2, False)]) == ValSet(2, 1, False)
    assert group_set([ValSet(2, 2, True), ValSet(4, 2, False)]) == ValSet(2, 1, True)


def test_separated():
    assert separated([ValSet(2, 2, True), ValSet.point(3)])
    assert not separated([ValSet(2, 2, True), ValSet(4, 2, True)])
    assert not separated([ValSet(2, 2, True), ValSet(3, 2, True)])


def test_dict_roundtrip():
    s = ValSet(5, 3, True)
    assert ValSet.from_dict(s.to_dict()) == s
    assert s.describe() == "5 + 3N or infinity"
