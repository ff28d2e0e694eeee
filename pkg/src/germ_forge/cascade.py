"""The normal-system cascade and its Taylor-split deformation family."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .discriminants import first_nonvanishing, gen_discriminants
from .errors import MalformedFamily, TruncationTooCoarse
from .poly import Poly
from .scalars import REAL
from .series import (
    LinearChange,
    PseudoPoly,
    TruncSeries,
    _min_order,
    find_regular_direction,
)
from .weierstrass import weierstrass_prepare

PARAM = "t"


@dataclass(frozen=True)
class Level:
    """One rung of the cascade.

    ``f`` is the pseudopolynomial ``f_i`` in ``x_i``; ``j`` is the index of
    its first nonvanishing generalized discriminant (``None`` once ``f_i`` is
    1); ``disc`` and ``unit`` satisfy ``disc = unit * f`` and are ``None`` at
    the top level; ``change`` is the linear change drawn while building this
    level.
    """

    index: int
    f: PseudoPoly
    p: int
    j: int | None
    unit: TruncSeries | None
    disc: TruncSeries | None
    change: LinearChange | None
    qualifier: str | None = None


@dataclass(frozen=True)
class NormalSystem:
    vars: tuple
    inputs: tuple
    levels: tuple  # i = n, n-1, ..., 0
    order: int
    seed: int
    preliminary: LinearChange | None = None
    field: str = REAL

    @property
    def n(self) -> int:
        return len(self.vars)

    def level(self, i: int) -> Level:
        return self.levels[self.n - i]

    @property
    def degrees(self) -> tuple:
        return tuple(lv.p for lv in self.levels)

    @property
    def indices(self) -> tuple:
        """``(j_n, ..., j_1)``: first nonvanishing discriminant index used below each level."""
        return tuple(lv.j for lv in self.levels[:-1])

    @property
    def change(self) -> LinearChange:
        """Composite of every change applied, including the preliminary one."""
        total = self.preliminary or LinearChange.identity(self.n, self.seed)
        for lv in self.levels:
            if lv.change is not None:
                total = total.then(lv.change)
        return total

    def reconstruction_errors(self) -> list:
        """Levels where ``unit * f_i`` and ``Delta(a_{i+1})`` disagree, or the stored Delta is stale."""
        bad = []
        for upper, lv in zip(self.levels, self.levels[1:]):
            if lv.disc is None:
                continue
            deltas = gen_discriminants(upper.f).deltas
            recomputed = deltas[upper.j - 1]
            if not recomputed.agrees_with(lv.disc):
                bad.append((lv.index, "stale discriminant"))
            prod = lv.unit * lv.f.to_series()
            if not prod.truncate(self.order).agrees_with(lv.disc.truncate(self.order)):
                bad.append((lv.index, "unit * f differs from discriminant"))
        return bad


def pp_mul(F: PseudoPoly, G: PseudoPoly) -> PseudoPoly:
    """Product of two monic pseudopolynomials in the same variable."""
    if F.main != G.main or F.vars != G.vars:
        raise ValueError("pseudopolynomials live in different variables")
    one = TruncSeries(Poly.constant(F.vars, 1, F.field))
    a = (one,) + F.coeffs
    b = (one,) + G.coeffs
    out = []
    for k in range(1, F.degree + G.degree + 1):
        acc = None
        for i in range(max(0, k - G.degree), min(k, F.degree) + 1):
            term = a[i] * b[k - i]
            acc = term if acc is None else acc + term
        out.append(acc)
    return PseudoPoly(F.main, tuple(out), F.vars, F.field, F.params)


def _apply_change(obj, change: LinearChange):
    if obj is None:
        return None
    if isinstance(obj, PseudoPoly):
        return obj.map_coeffs(change.apply)
    return change.apply(obj)


def _relabel(lv: Level, change: LinearChange) -> Level:
    return Level(
        lv.index,
        _apply_change(lv.f, change),
        lv.p,
        lv.j,
        _apply_change(lv.unit, change),
        _apply_change(lv.disc, change),
        lv.change,
        lv.qualifier,
    )


def _as_series(g, vars, field):
    if isinstance(g, PseudoPoly):
        return g.to_series()
    if isinstance(g, Poly):
        return TruncSeries(g)
    return g


def _prepare_inputs(g_list, N: int, seed: int):
    """Bring the inputs to distinguished pseudopolynomials in the last variable."""
    g_list = list(g_list)
    if not g_list:
        raise ValueError("need at least one input")
    first = g_list[0]
    vars, field = first.vars, first.field
    main = len(vars) - 1
    if all(isinstance(g, PseudoPoly) and g.main == main and g.is_distinguished() for g in g_list):
        return [g for g in g_list], None
    series = [_as_series(g, vars, field) for g in g_list]
    prod = series[0]
    for s in series[1:]:
        prod = prod * s
    change, _ = find_regular_direction(prod, main, seed)
    out = []
    for s in series:
        s2 = change.apply(s)
        p = s2.body.ord()
        if p is None:
            raise ValueError("input vanishes to its known order")
        if p > N:
            raise TruncationTooCoarse(f"input has order {p} above the truncation order N={N}; truncation too coarse")
        _, W = weierstrass_prepare(s2, main, p, N)
        out.append(W)
    return out, (None if change.is_identity() else change)


def build_cascade(g_list, N: int, seed: int = 0, route: str = "auto") -> NormalSystem:
    """Build ``f_n, ..., f_0`` from the inputs ``g_1..g_l``.

    Inputs are PseudoPolys distinguished in the last variable; anything else
    (a Poly or TruncSeries, or a non-distinguished PseudoPoly) first goes
    through a generic linear change and Weierstrass preparation. Every stored
    level is expressed in the final coordinates: a change drawn at a lower
    level is pushed into all levels above it.
    """
    prepared, preliminary = _prepare_inputs(g_list, N, seed)
    vars = prepared[0].vars
    field = prepared[0].field
    n = len(vars)
    f = prepared[0]
    for g in prepared[1:]:
        f = pp_mul(f, g)

    levels = [Level(n, f, f.degree, None, None, None, None)]
    i = n
    while i >= 1:
        top = levels[-1]
        F = top.f
        if F.degree == 0:
            lower = PseudoPoly.one(i - 2 if i >= 2 else 0, vars, field)
            one = TruncSeries(Poly.constant(vars, 1, field))
            levels.append(Level(i - 1, lower, 0, None, one, None, None))
            i -= 1
            continue
        j, delta, qual = first_nonvanishing(F, route)
        levels[-1] = Level(top.index, top.f, top.p, j, top.unit, top.disc, top.change, qual)
        if i == 1 or delta.is_unit():
            one = PseudoPoly.one(max(i - 2, 0), vars, field)
            levels.append(Level(i - 1, one, 0, None, delta, delta, None))
            i -= 1
            continue
        main = i - 2
        change, p = find_regular_direction(delta, main, seed)
        if delta.order is not None and delta.order < p:
            raise TruncationTooCoarse(
                f"discriminant at level {i - 1} known to order {delta.order}, below its multiplicity {p}"
            )
        if not change.is_identity():
            delta = change.apply(delta)
            levels = [_relabel(lv, change) for lv in levels]
        u, W = weierstrass_prepare(delta, main, p, N)
        levels.append(Level(i - 1, W, p, None, u, delta, None if change.is_identity() else change))
        i -= 1
    inputs = tuple(_as_series(g, vars, field) for g in g_list)
    return NormalSystem(vars, inputs, tuple(levels), N, seed, preliminary, field)


# -- deformation --------------------------------------------------------------


@dataclass(frozen=True)
class DeformationFamily:
    """``f~_i(t, x)``: each coefficient ``a`` becomes ``jet(a, m) + t * (a - jet(a, m))``."""

    system: NormalSystem
    members: tuple  # PseudoPolys over vars + (t,), i = n..0
    m: int
    param: str = PARAM

    @property
    def vars(self) -> tuple:
        return self.members[0].vars

    def at(self, t0) -> list:
        """The members with the parameter set to ``t0``, over the original variables."""
        base = self.system.vars
        t0 = Fraction(t0) if not hasattr(t0, "im") else t0

        def at_t0(a: TruncSeries) -> TruncSeries:
            body = a.body.subs({self.param: t0})
            return TruncSeries(body.with_vars(base), a.order)

        out = []
        for F in self.members:
            out.append(PseudoPoly(F.main, tuple(at_t0(a) for a in F.coeffs), base, F.field))
        return out


def _split_coeff(a: TruncSeries, m: int, vars: tuple) -> TruncSeries:
    m_eff = m if a.order is None else min(m, a.order)
    lifted = a.with_vars(vars)
    low = lifted.jet(m_eff)
    t = Poly.var(vars, PARAM, a.field)
    tail = lifted.body - low
    return TruncSeries(low + t * tail, a.order)


def build_deformation(ns: NormalSystem, m: int) -> DeformationFamily:
    if m >= ns.order:
        raise ValueError(f"split order m={m} must be below the truncation order N={ns.order}")
    if PARAM in ns.vars:
        raise MalformedFamily(f"variable name {PARAM!r} is reserved for the deformation parameter")
    vars = ns.vars + (PARAM,)
    members = []
    for lv in ns.levels:
        F = lv.f
        coeffs = tuple(_split_coeff(a, m, vars) for a in F.coeffs)
        members.append(PseudoPoly(F.main, coeffs, vars, F.field, (PARAM,)))
    return DeformationFamily(ns, tuple(members), m)


def constant_family(ns: NormalSystem) -> list:
    """The trivial family ``F_i(t, x) = f_i(x)``."""
    vars = ns.vars + (PARAM,)
    return [
        PseudoPoly(lv.f.main, tuple(a.with_vars(vars) for a in lv.f.coeffs), vars, lv.f.field, (PARAM,))
        for lv in ns.levels
    ]
