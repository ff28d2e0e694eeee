"""Truncated arcs, jet equations and membership certificates.

An ``m``-truncated arc ``gamma`` lies in the arc truncation space of
``X = {f = 0}`` when some analytic arc on ``X`` has ``gamma`` as its
``m``-jet. :func:`member_trunc` looks for evidence either way:

1. an exact witness: a polynomial arc with ``f(arc) = 0``;
2. a valuation obstruction: a split of ``f`` into groups of terms whose
   possible t-orders, over every lift of ``gamma``, never meet, so
   ``f(lift)`` cannot vanish;
3. a degree-by-degree lift search on the jet equations, which may end in a
   contradiction (lift impossible), an exact polynomial witness, an
   implicit-function witness, or nothing conclusive.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .discriminants import gcd_root_count, ugcd, uderiv
from .poly import Poly
from .scalars import COMPLEX, REAL, QQi, field_sqrt, format_scalar, gaussian
from .valuation import ValSet, group_set, monomial_set, separated

T = "t"

EXACT_WITNESS = "exact-witness"
VALUATION_OBSTRUCTION = "valuation-obstruction"
LIFT_IMPOSSIBLE = "lift-to-order-K-impossible"
UNKNOWN = "unknown"

NEGATIVE = (VALUATION_OBSTRUCTION, LIFT_IMPOSSIBLE)


# -- arcs ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TruncatedArc:
    """``n`` polynomials in ``t`` of degree at most ``order``, vanishing at ``t = 0``."""

    components: tuple
    order: int
    field: str = REAL

    def __post_init__(self):
        comps = []
        for c in self.components:
            if not isinstance(c, Poly):
                c = Poly.constant((T,), c, self.field)
            if c.vars != (T,):
                raise ValueError(f"arc components must be polynomials in {T!r}, got {c.vars}")
            if c.constant_term() != 0:
                raise ValueError("arc components must vanish at t = 0")
            if c.total_degree() > self.order:
                raise ValueError(f"component {c} exceeds the arc order {self.order}")
            comps.append(c.with_field(self.field) if self.field == COMPLEX else c)
        object.__setattr__(self, "components", tuple(comps))

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[Sequence], order: int, field=REAL) -> "TruncatedArc":
        """``coeffs[j][i-1]`` is the coefficient of ``t^i`` in component ``j``."""
        comps = []
        for row in coeffs:
            terms = {(i,): c for i, c in enumerate(row, start=1) if c != 0}
            comps.append(Poly((T,), terms, field))
        return cls(tuple(comps), order, field)

    @property
    def n(self) -> int:
        return len(self.components)

    def coeff(self, j: int, i: int):
        return self.components[j].terms.get((i,), 0)

    def truncate(self, m: int) -> "TruncatedArc":
        return TruncatedArc(tuple(c.truncate(m) for c in self.components), m, self.field)

    def __str__(self):
        return ", ".join(c.to_str() for c in self.components)


def t_order(p: Poly):
    """Order in ``t`` of a univariate polynomial, ``math.inf`` for zero."""
    o = p.ord()
    return math.inf if o is None else o


def compose_arc(f: Poly, comps: Sequence[Poly], N: int | None = None) -> Poly:
    field = COMPLEX if COMPLEX in (f.field, *(c.field for c in comps)) else REAL
    return f.with_field(field).compose([c.with_field(field) for c in comps], N)


def composed_order(f: Poly, comps: Sequence[Poly], hint: int = 8):
    """``ord_t f(comps)`` by truncated composition with a growing bound."""
    top = max(f.total_degree(), 0) * max((c.total_degree() for c in comps), default=0)
    bound = max(hint, 1)
    while True:
        o = compose_arc(f, comps, bound).ord()
        if o is not None:
            return o
        if bound >= top:
            return math.inf
        bound = min(2 * bound, top)


# -- jet equations ------------------------------------------------------------------


def unknown_name(var: str, i: int) -> str:
    return f"c_{var}_{i}"


def _tmul(a: list, b: list, K: int, zero: Poly) -> list:
    out = [zero] * (K + 1)
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        for j in range(0, K + 1 - i):
            y = b[j]
            if not y.is_zero():
                out[i + j] = out[i + j] + x * y
    return out


def _expand(f: Poly, comps: list, K: int, ring: tuple, field: str) -> list:
    """Coefficients of ``t^0..t^K`` of ``f(comps)``, with comps given as coefficient lists."""
    zero = Poly.zero(ring, field)
    one = [Poly.constant(ring, 1, field)] + [zero] * K
    cache = [{0: one} for _ in comps]

    def power(k, n):
        c = cache[k]
        if n not in c:
            c[n] = _tmul(power(k, n - 1), comps[k], K, zero)
        return c[n]

    total = [zero] * (K + 1)
    for e, coef in f.terms.items():
        term = [Poly.constant(ring, coef, field)] + [zero] * K
        for k, n in enumerate(e):
            if n:
                term = _tmul(term, power(k, n), K, zero)
        for d in range(K + 1):
            if not term[d].is_zero():
                total[d] = total[d] + term[d]
    return total


@dataclass(frozen=True)
class JetSystem:
    """Equations ``E_1..E_K``: the ``t^d`` coefficients of ``f(arc)`` for a symbolic arc.

    ``unknowns`` lists the free coefficients ``c_{var}_{i}``; ``pinned``
    records fixed coefficients (``i <= m``) already substituted.
    """

    f: Poly
    K: int
    unknowns: tuple
    equations: tuple
    pinned: dict = dc_field(default_factory=dict)
    m: int = 0

    def residuals(self, assignment: dict) -> list:
        vals = {u: assignment.get(u, 0) for u in self.unknowns}
        return [e.evaluate(vals) for e in self.equations]

    def satisfied_by(self, assignment: dict) -> bool:
        return all(r == 0 for r in self.residuals(assignment))

    def pin(self, arc: TruncatedArc) -> "JetSystem":
        """Fix the coefficients of degree ``<= arc.order`` to those of ``arc``."""
        values = {}
        for j, v in enumerate(self.f.vars):
            for i in range(1, arc.order + 1):
                values[unknown_name(v, i)] = arc.coeff(j, i)
        eqs = tuple(e.subs(values) for e in self.equations)
        free = tuple(u for u in self.unknowns if u not in values)
        eqs = tuple(e.with_vars(free) for e in eqs)
        return JetSystem(self.f, self.K, free, eqs, values, arc.order)


def jet_equations(f: Poly, K: int, arc: TruncatedArc | None = None, field: str | None = None) -> JetSystem:
    """The jet system of ``f`` up to ``t^K``, optionally with the low coefficients pinned to ``arc``."""
    if f.constant_term() != 0:
        raise ValueError("f must vanish at the origin")
    field = field or (arc.field if arc is not None else f.field)
    if f.field == COMPLEX:
        field = COMPLEX
    m = arc.order if arc is not None else 0
    unknowns = tuple(unknown_name(v, i) for v in f.vars for i in range(m + 1, K + 1))
    ring = unknowns
    zero = Poly.zero(ring, field)
    comps = []
    pinned = {}
    for j, v in enumerate(f.vars):
        row = [zero]
        for i in range(1, K + 1):
            if i <= m:
                c = arc.coeff(j, i)
                pinned[unknown_name(v, i)] = c
                row.append(Poly.constant(ring, c, field))
            else:
                row.append(Poly.var(ring, unknown_name(v, i), field))
        comps.append(row)
    coeffs = _expand(f.with_field(field), comps, K, ring, field)
    return JetSystem(f, K, unknowns, tuple(coeffs[1:]), pinned, m)


# -- certificates --------------------------------------------------------------------


@dataclass(frozen=True)
class MembershipCertificate:
    kind: str
    arc: TruncatedArc
    K: int
    field: str
    payload: dict = dc_field(default_factory=dict)

    @property
    def positive(self) -> bool:
        return self.kind == EXACT_WITNESS

    @property
    def negative(self) -> bool:
        return self.kind in NEGATIVE

    @property
    def definite(self) -> bool:
        return self.kind != UNKNOWN


# -- valuation obstruction -----------------------------------------------------------


def component_sets(arc: TruncatedArc) -> list:
    out = []
    for c in arc.components:
        out.append(ValSet.tail(arc.order) if c.is_zero() else ValSet.point(c.ord()))
    return out


def _group_poly(f: Poly, exps) -> Poly:
    return Poly(f.vars, {e: f.terms[e] for e in exps}, f.field)


def _candidate_splits(f: Poly, max_terms: int = 12):
    exps = sorted(f.terms, key=lambda e: (sum(e), e))
    even = [e for e in exps if all(k % 2 == 0 for k in e)]
    odd = [e for e in exps if e not in even]
    if even and odd:
        yield [even, odd]
    yield [exps]
    if len(exps) <= max_terms:
        first, rest = exps[0], exps[1:]
        for r in range(0, len(rest)):
            for chosen in combinations(rest, r):
                a = [first, *chosen]
                b = [e for e in rest if e not in chosen]
                if b and [a, b] != [even, odd] and [b, a] != [even, odd]:
                    yield [a, b]


def valuation_obstruction(f: Poly, arc: TruncatedArc):
    """A split of ``f`` whose group orders are provably distinct for every lift, or ``None``."""
    comp = component_sets(arc)
    if f.constant_term() != 0:
        return {"components": comp, "groups": [{"terms": f, "orders": ValSet.point(0)}]}
    term_sets = {e: monomial_set(e, comp) for e in f.terms}
    for split in _candidate_splits(f):
        groups = [group_set([term_sets[e] for e in g]) for g in split]
        if separated(groups):
            return {
                "components": comp,
                "groups": [
                    {"terms": _group_poly(f, g), "orders": s} for g, s in zip(split, groups)
                ],
            }
    return None


# -- univariate root finding ------------------------------------------------------


def _dense(p: Poly, var_index: int) -> list:
    d = p.degree_in(var_index)
    out = [0] * (d + 1)
    for e, c in p.terms.items():
        out[d - e[var_index]] += c
    return out


def _integerize(coeffs: list) -> list:
    den = 1
    for c in coeffs:
        den = den * Fraction(c).denominator // math.gcd(den, Fraction(c).denominator)
    return [int(Fraction(c) * den) for c in coeffs]


def _divisors(n: int) -> list:
    n = abs(n)
    out = set()
    for k in range(1, math.isqrt(n) + 1):
        if n % k == 0:
            out.update((k, n // k))
    return sorted(out)


def _horner(coeffs, x):
    acc = 0
    for c in coeffs:
        acc = acc * x + c
    return acc


def _deflate(coeffs, r):
    out, acc = [], 0
    for c in coeffs[:-1]:
        acc = acc * r + c
        out.append(acc)
    return out


def field_roots(coeffs: list, field: str) -> list:
    """Distinct roots in the exact field found by rational roots plus the quadratic formula.

    The list may be incomplete for irreducible factors of degree above 2.
    """
    coeffs = list(coeffs)
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
    roots = []
    if len(coeffs) <= 1:
        return roots
    if coeffs[-1] == 0:
        roots.append(Fraction(0))
        while coeffs[-1] == 0:
            coeffs.pop()
    if all(not isinstance(c, QQi) for c in coeffs) and len(coeffs) > 1:
        ints = _integerize(coeffs)
        changed = True
        while changed and len(ints) > 1:
            changed = False
            for q in _divisors(ints[0]):
                for p in _divisors(ints[-1]):
                    for r in (Fraction(p, q), Fraction(-p, q)):
                        if _horner(ints, r) == 0:
                            if r not in roots:
                                roots.append(r)
                            ints = _integerize(_deflate(ints, r))
                            changed = True
                            break
                    if changed:
                        break
                if changed:
                    break
        coeffs = [Fraction(c) for c in ints]
    if len(coeffs) == 2:
        r = -coeffs[1] / coeffs[0]
        if r not in roots:
            roots.append(r)
    elif len(coeffs) == 3:
        a, b, c = coeffs
        disc = b * b - 4 * a * c
        s = field_sqrt(disc, field)
        if s is not None:
            for sgn in (1, -1):
                r = gaussian_collapse((-b + sgn * s) / (2 * a))
                if r not in roots:
                    roots.append(r)
    if field == REAL:
        roots = [r for r in roots if not isinstance(r, QQi)]
    return _sort_roots(roots)


def gaussian_collapse(c):
    if isinstance(c, QQi):
        return gaussian(c.re, c.im)
    return c


def _root_key(r):
    re = r.re if isinstance(r, QQi) else Fraction(r)
    im = r.im if isinstance(r, QQi) else Fraction(0)
    return (abs(re) + abs(im), -re, -im)


def _sort_roots(roots):
    return sorted(roots, key=_root_key)


def sturm_real_root_count(coeffs: list) -> int:
    """Number of distinct real roots of a rational univariate polynomial."""
    f = [Fraction(c) for c in coeffs]
    while f and f[0] == 0:
        f.pop(0)
    if len(f) <= 1:
        return 0
    g = ugcd(f, uderiv(f))
    if len(g) > 1:
        f = _pdiv(f, g)
    seq = [f, uderiv(f)]
    while len(seq[-1]) > 1:
        r = _prem_neg(seq[-2], seq[-1])
        if not r:
            break
        seq.append(r)

    def changes(signs):
        signs = [s for s in signs if s != 0]
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    at_pos = [_sign(p[0]) for p in seq]
    at_neg = [_sign(p[0]) * (-1) ** (len(p) - 1) for p in seq]
    return changes(at_neg) - changes(at_pos)


def _sign(x):
    return (x > 0) - (x < 0)


def _pdiv(f, g):
    f = list(f)
    q = []
    while len(f) >= len(g):
        c = f[0] / g[0]
        q.append(c)
        for k in range(len(g)):
            f[k] -= c * g[k]
        f.pop(0)
    return q


def _prem_neg(f, g):
    r = list(f)
    while len(r) >= len(g):
        c = r[0] / g[0]
        for k in range(len(g)):
            r[k] -= c * g[k]
        r.pop(0)
    while r and r[0] == 0:
        r.pop(0)
    return [-c for c in r]


# -- lift search ----------------------------------------------------------------------


def _sign_definite(E: Poly) -> bool:
    """Every term an even power with coefficients of one strict sign, constant included."""
    if any(isinstance(c, QQi) for c in E.terms.values()):
        return False
    if E.constant_term() == 0:
        return False
    signs = {c > 0 for c in E.terms.values()}
    return len(signs) == 1 and all(k % 2 == 0 for e in E.terms for k in e)


class _Contradiction(Exception):
    def __init__(self, degree, reason, equation):
        self.degree = degree
        self.reason = reason
        self.equation = equation


class _Stuck(Exception):
    def __init__(self, degree, reason):
        self.degree = degree
        self.reason = reason


def _solve_degree(E: Poly, d: int, field: str, assign: dict, log: list, state: dict):
    """Extend ``assign`` so that ``E`` vanishes; raises on contradiction or when stuck."""
    while True:
        E = E.subs(assign) if assign else E
        if E.is_zero():
            return
        free = [v for v in E.used_vars()]
        if not free:
            if state["choices"]:
                raise _Stuck(d, f"equation at t^{d} reduces to the nonzero constant {E.to_str()} after choices")
            raise _Contradiction(d, "nonzero constant", E)
        if field == REAL and _sign_definite(E):
            if state["choices"]:
                raise _Stuck(d, f"sign-definite equation at t^{d} after choices")
            raise _Contradiction(d, "sign-definite over the reals", E)
        if len(free) > 1:
            keep = None
            for v in reversed(free):
                k = E.vars.index(v)
                if E.degree_in(k) == 1 and E.coeffs_in(k)[1].is_constant():
                    keep = v
                    break
            keep = keep or free[-1]
            for v in free:
                if v != keep:
                    assign[v] = Fraction(0)
                    log.append((d, v, Fraction(0), "choice"))
            state["choices"] += 1
            continue
        v = free[0]
        k = E.vars.index(v)
        coeffs = _dense(E, k)
        roots = field_roots(coeffs, field)
        if not roots:
            if field == REAL and all(not isinstance(c, QQi) for c in coeffs):
                if sturm_real_root_count(coeffs) == 0:
                    if state["choices"]:
                        raise _Stuck(d, f"no real root at t^{d} after choices")
                    raise _Contradiction(d, "no real root", E)
            raise _Stuck(d, f"no root of the equation at t^{d} in the exact field")
        r = roots[0]
        forced = len(coeffs) == 2 or gcd_root_count(coeffs) == 1
        assign[v] = r
        log.append((d, v, r, "forced" if forced else "choice"))
        if not forced:
            state["choices"] += 1


def _lift_arc(f: Poly, arc: TruncatedArc, K: int, assign: dict, field: str) -> TruncatedArc:
    comps = []
    for j, v in enumerate(f.vars):
        terms = {}
        for i in range(1, K + 1):
            c = arc.coeff(j, i) if i <= arc.order else assign.get(unknown_name(v, i), 0)
            if c != 0:
                terms[(i,)] = c
        comps.append(Poly((T,), terms, field))
    return TruncatedArc(tuple(comps), K, field)


def _tougeron(f: Poly, lift: TruncatedArc, K: int, m: int):
    """Newton/Tougeron data: ``(ok, e, value_order)`` for lifting an approximate root."""
    value = compose_arc(f, lift.components)
    vo = t_order(value)
    e = math.inf
    for k in range(len(f.vars)):
        g = f.diff(k)
        if g.is_zero():
            continue
        e = min(e, t_order(compose_arc(g, lift.components)))
    ok = e != math.inf and vo > 2 * e and vo - e > m
    return ok, e, vo


def member_trunc(f: Poly, arc: TruncatedArc, K: int, field: str | None = None) -> MembershipCertificate:
    """Evidence for or against ``arc`` being the ``m``-jet of an arc on ``f = 0``."""
    field = field or arc.field
    if field == REAL and (f.field == COMPLEX and any(isinstance(c, QQi) for c in f.terms.values())):
        raise ValueError("polynomial with complex coefficients in real field mode")
    if arc.n != len(f.vars):
        raise ValueError(f"arc has {arc.n} components, polynomial has {len(f.vars)} variables")
    if field == COMPLEX:
        f = f.with_field(COMPLEX)
    m = arc.order
    if m > K:
        raise ValueError(f"arc order {m} exceeds the lift order K={K}")
    arc = TruncatedArc(arc.components, m, field)

    if compose_arc(f, arc.components).is_zero():
        return MembershipCertificate(EXACT_WITNESS, arc, K, field, {"method": "polynomial", "witness": arc})

    obstruction = valuation_obstruction(f, arc)
    if obstruction is not None:
        return MembershipCertificate(VALUATION_OBSTRUCTION, arc, K, field, obstruction)

    system = jet_equations(f, K, arc, field)
    assign: dict = {}
    log: list = []
    state = {"choices": 0}
    for d, E in enumerate(system.equations, start=1):
        try:
            _solve_degree(E, d, field, assign, log, state)
        except _Contradiction as c:
            return MembershipCertificate(
                LIFT_IMPOSSIBLE, arc, K, field,
                {"degree": c.degree, "reason": c.reason, "equation": c.equation.with_vars(c.equation.used_vars()),
                 "forced": [(dd, v, val) for dd, v, val, _ in log]},
            )
        except _Stuck as s:
            return MembershipCertificate(UNKNOWN, arc, K, field, {"reason": s.reason, "degree": s.degree})
        lift = _lift_arc(f, arc, K, assign, field)
        if compose_arc(f, lift.components).is_zero():
            return MembershipCertificate(EXACT_WITNESS, arc, K, field, {"method": "polynomial", "witness": lift})

    lift = _lift_arc(f, arc, K, assign, field)
    ok, e, vo = _tougeron(f, lift, K, m)
    if ok:
        return MembershipCertificate(
            EXACT_WITNESS, arc, K, field,
            {"method": "implicit-function", "witness": lift, "jacobian_order": e, "value_order": vo},
        )
    return MembershipCertificate(
        UNKNOWN, arc, K, field,
        {"reason": f"lift to order {K} found but the implicit-function criterion needs a larger K",
         "jacobian_order": e, "value_order": vo},
    )


# -- replay ---------------------------------------------------------------------------


def random_lift(arc: TruncatedArc, K: int, rng: random.Random, height: int = 5) -> TruncatedArc:
    comps = []
    for c in arc.components:
        terms = dict(c.terms)
        for i in range(arc.order + 1, K + 1):
            v = rng.randint(-height, height)
            if v and rng.random() < 0.7:
                terms[(i,)] = Fraction(v)
        comps.append(Poly((T,), terms, arc.field))
    return TruncatedArc(tuple(comps), K, arc.field)


def replay_certificate(f: Poly, cert: MembershipCertificate, lifts: int = 50, seed: int = 0) -> bool:
    """Re-check a certificate with exact arithmetic."""
    arc, K, field = cert.arc, cert.K, cert.field
    if field == COMPLEX:
        f = f.with_field(COMPLEX)
    if cert.kind == EXACT_WITNESS:
        w = cert.payload["witness"]
        if w.truncate(arc.order).components != arc.components:
            return False
        if cert.payload["method"] == "polynomial":
            return compose_arc(f, w.components).is_zero()
        ok, e, vo = _tougeron(f, w, K, arc.order)
        return ok and vo > K and e == cert.payload["jacobian_order"]
    if cert.kind == VALUATION_OBSTRUCTION:
        again = valuation_obstruction(f, arc)
        if again is None:
            return False
        groups = cert.payload["groups"]
        total = Poly.zero(f.vars, f.field)
        for g in groups:
            total = total + g["terms"]
        if total != f:
            return False
        rng = random.Random(f"replay:{seed}")
        for _ in range(lifts):
            lift = random_lift(arc, K, rng)
            orders = [composed_order(g["terms"], lift.components, g["orders"].start + 4) for g in groups]
            for o, g in zip(orders, groups):
                if not g["orders"].contains(o):
                    return False
            finite = [o for o in orders if o != math.inf]
            if not finite or len(set(finite)) != len(finite):
                return False
        return True
    if cert.kind == LIFT_IMPOSSIBLE:
        d = cert.payload["degree"]
        system = jet_equations(f, d, arc, field)
        assign: dict = {}
        state = {"choices": 0}
        try:
            for dd, E in enumerate(system.equations, start=1):
                _solve_degree(E, dd, field, assign, [], state)
        except _Contradiction as c:
            return c.degree == d
        except _Stuck:
            return False
        return False
    return True


# -- comparison -----------------------------------------------------------------------

AGREE = "agree"
DISAGREE = "disagree"
UNDECIDED = "unknown"


@dataclass(frozen=True)
class ArcComparison:
    arc: TruncatedArc
    first: MembershipCertificate
    second: MembershipCertificate

    @property
    def status(self) -> str:
        a, b = self.first, self.second
        if not (a.definite and b.definite):
            return UNDECIDED
        return AGREE if a.positive == b.positive else DISAGREE


@dataclass(frozen=True)
class ComparisonReport:
    m: int
    K: int
    field: str
    entries: tuple

    @property
    def spaces_differ(self) -> bool:
        """A definite disagreement proves the truncation spaces are different."""
        return any(e.status == DISAGREE for e in self.entries)

    def count(self, status: str) -> int:
        return sum(1 for e in self.entries if e.status == status)


def compare_arc_spaces(f: Poly, g: Poly, m: int, K: int, arcs, field: str = REAL) -> ComparisonReport:
    entries = []
    for arc in arcs:
        if arc.order != m:
            raise ValueError(f"arc of order {arc.order} in a comparison at order {m}")
        entries.append(ArcComparison(arc, member_trunc(f, arc, K, field), member_trunc(g, arc, K, field)))
    return ComparisonReport(m, K, field, tuple(entries))
