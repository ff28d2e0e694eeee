"""Sets of possible t-orders, used to refute arc lifts without solving for them.

A :class:`ValSet` over-approximates the orders a series can take over all
lifts of a pinned jet: the finite values lie in ``start + step * N`` (a
single value when ``step == 0``), and ``inf`` says the series may vanish.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations


@dataclass(frozen=True)
class ValSet:
    start: int
    step: int = 0
    inf: bool = False

    @classmethod
    def point(cls, v: int) -> "ValSet":
        return cls(v, 0, False)

    @classmethod
    def tail(cls, m: int) -> "ValSet":
        """Orders of ``sum_{i>m} c_i t^i`` with free ``c_i``: ``m+1, m+2, ...`` or infinity."""
        return cls(m + 1, 1, True)

    def scale(self, e: int) -> "ValSet":
        return ValSet(self.start * e, self.step * e, self.inf)

    def __add__(self, other: "ValSet") -> "ValSet":
        return ValSet(self.start + other.start, math.gcd(self.step, other.step), self.inf or other.inf)

    def contains(self, v) -> bool:
        if v == math.inf:
            return self.inf
        if self.step == 0:
            return v == self.start
        return v >= self.start and (v - self.start) % self.step == 0

    def surely_finite(self) -> bool:
        return not self.inf

    def disjoint(self, other: "ValSet") -> bool:
        """No finite value in common (infinity is ignored)."""
        a, b = self, other
        if a.step == 0 and b.step == 0:
            return a.start != b.start
        if a.step == 0:
            return not b.contains(a.start)
        if b.step == 0:
            return not a.contains(b.start)
        return (b.start - a.start) % math.gcd(a.step, b.step) != 0

    def describe(self) -> str:
        if self.step == 0:
            s = f"{{{self.start}}}"
        elif self.step == 1:
            s = f"{{{self.start}, {self.start + 1}, ...}}"
        else:
            s = f"{self.start} + {self.step}N"
        return s + (" or infinity" if self.inf else "")

    def to_dict(self) -> dict:
        return {"start": self.start, "step": self.step, "inf": self.inf}

    @classmethod
    def from_dict(cls, d) -> "ValSet":
        return cls(int(d["start"]), int(d["step"]), bool(d["inf"]))


def union(sets) -> ValSet:
    """Smallest arithmetic progression containing every finite part."""
    sets = list(sets)
    start = min(s.start for s in sets)
    g = 0
    for s in sets:
        g = math.gcd(g, s.step)
        g = math.gcd(g, s.start - start)
    return ValSet(start, g, all(s.inf for s in sets))


def monomial_set(exps, comp_sets) -> ValSet:
    total = ValSet.point(0)
    for e, s in zip(exps, comp_sets):
        if e:
            total = total + s.scale(e)
    return total


def group_set(sets) -> ValSet:
    """Orders of a sum of terms with the given order sets.

    With pairwise disjoint finite parts no cancellation is possible and the
    order is the least finite one; otherwise anything from the least start
    upward (or vanishing) may occur.
    """
    sets = list(sets)
    if len(sets) == 1:
        return sets[0]
    if all(a.disjoint(b) for a, b in combinations(sets, 2)):
        return union(sets)
    return ValSet(min(s.start for s in sets), 1, True)


def separated(groups) -> bool:
    """Pairwise disjoint group sets with at least one group certainly nonzero."""
    return all(a.disjoint(b) for a, b in combinations(groups, 2)) and any(
        g.surely_finite() for g in groups
    )
