"""The approximation map ``phi_m(x) = (x_1, ..., x_{n-1}, x_n + (tau(x)/delta)^m)``.

``phi_m - id`` vanishes to order ``m * ord(tau)`` at the origin, which is
the order-of-vanishing form of the bound
``|phi_m(a) - a| <= |tau(a)|^m / delta^m``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .arcs import TruncatedArc, compose_arc
from .poly import Poly


@dataclass(frozen=True)
class TangencyMap:
    tau: Poly
    delta: Fraction
    m: int

    @property
    def vars(self) -> tuple:
        return self.tau.vars

    @property
    def n(self) -> int:
        return len(self.tau.vars)

    @property
    def perturbation(self) -> Poly:
        """``(tau / delta)^m``, added to the last coordinate."""
        return (self.tau / self.delta) ** self.m

    @property
    def components(self) -> tuple:
        xs = [Poly.var(self.vars, v, self.tau.field) for v in self.vars]
        xs[-1] = xs[-1] + self.perturbation
        return tuple(xs)

    @property
    def rho(self) -> str:
        """Text of the companion map ``rho_m = (pi', w_m)`` with ``w_m(x, z) = x_n + (z/delta)^m``."""
        d = self.delta
        ds = str(d.numerator) if d.denominator == 1 else f"{d.numerator}/{d.denominator}"
        return f"rho_m(x, z) = (x_1, ..., x_{{n-1}}, w_m(x, z)), w_m(x, z) = x_n + (z/{ds})^{self.m}"

    def jacobian_is_identity(self) -> bool:
        """``phi_m - id`` has no constant or linear part."""
        p = self.perturbation
        return p.is_zero() or p.ord() >= 2


def make_phi(tau: Poly, delta, m: int) -> TangencyMap:
    delta = Fraction(delta)
    if tau.constant_term() != 0:
        raise ValueError("tau must vanish at the origin")
    if delta <= 0:
        raise ValueError("delta must be positive")
    if not isinstance(m, int) or m < 1:
        raise ValueError("m must be an integer >= 1")
    if not tau.vars:
        raise ValueError("tau needs at least one variable")
    return TangencyMap(tau, delta, m)


def verify_tangency(phi: TangencyMap):
    """``(order, holds)``: the order of ``phi_m - id`` at 0 and whether it reaches ``m * ord(tau)``."""
    p = phi.perturbation
    if p.is_zero():
        return math.inf, True
    order = p.ord()
    return order, order >= phi.m * phi.tau.ord() >= phi.m


def apply_to_arc(phi: TangencyMap, arc: TruncatedArc, K: int) -> TruncatedArc:
    """``phi_m`` composed with ``arc``, truncated at ``t^K``."""
    if arc.n != phi.n:
        raise ValueError(f"arc has {arc.n} components, map acts on {phi.n} variables")
    comps = [compose_arc(c, arc.components, K).truncate(K) for c in phi.components]
    return TruncatedArc(tuple(comps), K, arc.field)
