"""Zariski-equisingularity conditions for a parametric tower ``F_n, ..., F_0``.

The family is a list of PseudoPolys over ``(x_1..x_n, params)``, with
``F_i`` monic in ``x_i`` (index ``i - 1``) and ``F_0`` the constant 1 when
the system is well formed. Conditions checked:

* (2) every coefficient ``a_{i-1,j}(t, 0)`` vanishes identically;
* (3) the discriminant locus of ``F_i`` lies in ``F_{i-1} = 0``, certified by
  the sufficient test "first nonvanishing generalized discriminant of
  ``F_i`` divides ``F_{i-1}``", and refuted by root counting on sampled
  parameter values;
* (4) ``F_i(t, 0) = 0`` or ``F_i = 1``;
* (5) ``F_0 = 1``.

Condition (1) says the hypersurface is ``F_n = 0``; it is definitional.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .discriminants import first_nonvanishing, gcd_root_count
from .errors import MalformedFamily, TruncationTooCoarse
from .poly import NotDivisible, Poly
from .series import PseudoPoly, TruncSeries, Vanishing, _min_order

HOLDS_EXACTLY = "holds-exactly"
HOLDS_TO_ORDER = "holds-to-order"
UNKNOWN = "unknown"
FAILS = "fails"

_RANK = {HOLDS_EXACTLY: 0, HOLDS_TO_ORDER: 1, UNKNOWN: 2, FAILS: 3}


def combine(verdicts) -> str:
    return max(verdicts, key=_RANK.__getitem__, default=HOLDS_EXACTLY)


# -- truncated divisibility ------------------------------------------------------


@dataclass(frozen=True)
class DivisionResult:
    ok: bool
    quotient: TruncSeries | None
    exact: bool = False
    obstruction_degree: int | None = None
    obstruction: Poly | None = None


def _parts(p: Poly) -> dict:
    out: dict = {}
    for e, c in p.terms.items():
        out.setdefault(sum(e), {})[e] = c
    return {d: Poly(p.vars, t, p.field) for d, t in out.items()}


def divides_to_order(A, B, N: int) -> DivisionResult:
    """Solve ``A = B * Q`` degree by degree modulo total degree ``N + 1``.

    With ``b = ord(B)`` and ``B_b`` its lowest form, each homogeneous piece of
    ``Q`` is the exact quotient
    ``Q_k = (A_{k+b} - sum_{e>b} B_e Q_{k+b-e}) / B_b``; ``A`` is divisible
    to order ``N`` iff every such division is exact and ``A`` has no terms
    below degree ``b``. On failure the first obstructed degree and the
    nondivisible remainder are reported.
    """
    if isinstance(A, Poly):
        A = TruncSeries(A)
    if isinstance(B, Poly):
        B = TruncSeries(B)
    top = _min_order(N, A.order, B.order)
    if B.body.truncate(top).is_zero():
        raise TruncationTooCoarse(f"divisor vanishes to order {top}")
    vars, field = A.vars, A.field
    zero = Poly.zero(vars, field)
    b = B.body.ord()
    Ap, Bp = _parts(A.body), _parts(B.body)
    lead = Bp[b]
    for d in range(0, min(b, top + 1)):
        if d in Ap:
            return DivisionResult(False, None, False, d, Ap[d])
    Q: list = []
    for k in range(0, top - b + 1):
        rhs = Ap.get(k + b, zero)
        for e, Be in Bp.items():
            if e > b and k + b - e >= 0:
                qk = Q[k + b - e]
                if not qk.is_zero():
                    rhs = rhs - Be * qk
        try:
            Q.append(rhs.divexact(lead) if not rhs.is_zero() else zero)
        except NotDivisible:
            return DivisionResult(False, None, False, k + b, rhs)
    body = zero
    for part in Q:
        body = body + part
    exact = A.order is None and B.order is None and (B.body * body) == A.body
    order = None if exact else max(top - b, 0)
    return DivisionResult(True, TruncSeries(body, order), exact)


# -- sampling --------------------------------------------------------------------


def small_rationals(count: int) -> list:
    """``0, 1, -1, 2, -2, 1/2, -1/2, ...``: distinct rationals by increasing height."""
    out = [Fraction(0)]
    h = 1
    while len(out) < count:
        fresh = []
        for q in range(1, h + 1):
            for p in range(0, h + 1):
                if max(p, q) != h or p == 0:
                    continue
                v = Fraction(p, q)
                if v.numerator == p and v.denominator == q:
                    fresh.extend([v, -v])
        out.extend(fresh)
        h += 1
    return out[:count]


_GRID = (0, 1, -1, 2, -2, 3, -3)


def _grid(dim: int, cap: int = 343):
    return itertools.islice(itertools.product(_GRID, repeat=dim), cap)


# -- verdict ----------------------------------------------------------------------


@dataclass(frozen=True)
class Witness:
    """Concrete evidence for a failed condition.

    ``kind`` is one of ``"coefficient-at-origin"``, ``"root-count"``,
    ``"value-at-origin"`` or ``"last-not-one"``; ``data`` holds the exact
    values needed to replay it.
    """

    condition: int
    level: int
    kind: str
    description: str
    data: dict


@dataclass(frozen=True)
class ConditionResult:
    verdict: str
    levels: dict  # level -> verdict
    notes: tuple = ()


@dataclass(frozen=True)
class EquisingVerdict:
    conditions: dict  # 2..5 -> ConditionResult
    order: int
    params: tuple
    witnesses: tuple
    metadata: dict = dc_field(default_factory=dict)

    @property
    def verdict(self) -> str:
        return combine(c.verdict for c in self.conditions.values())

    @property
    def holds(self) -> bool:
        return self.verdict in (HOLDS_EXACTLY, HOLDS_TO_ORDER)

    @property
    def fails(self) -> bool:
        return self.verdict == FAILS


def _validate(family, params):
    family = list(family)
    if not family:
        raise MalformedFamily("empty family")
    vars = family[0].vars
    field = family[0].field
    for p in params:
        if p not in vars:
            raise MalformedFamily(f"parameter {p!r} not among the variables {vars}")
    xs = [v for v in vars if v not in params]
    n = len(xs)
    if len(family) != n + 1:
        raise MalformedFamily(f"expected {n + 1} members F_{n}..F_0, got {len(family)}")
    for k, F in enumerate(family):
        if not isinstance(F, PseudoPoly):
            raise MalformedFamily("members must be monic pseudopolynomials")
        if F.vars != vars or F.field != field:
            raise MalformedFamily("members must share variables and field")
        i = n - k
        if i >= 1 and F.degree > 0 and F.main_var != xs[i - 1]:
            raise MalformedFamily(f"F_{i} must be monic in {xs[i - 1]!r}, found {F.main_var!r}")
        if i == 0 and F.degree > 0 and F.main_var in params:
            raise MalformedFamily("F_0 cannot be monic in a parameter")
        for a in F.coeffs:
            for idx, v in enumerate(vars):
                if v in params:
                    continue
                if i >= 1 and xs.index(v) >= i - 1 and a.body.involves(idx):
                    raise MalformedFamily(
                        f"coefficient of F_{i} involves {v!r}; it may only depend on x_1..x_{i - 1}"
                    )
    return family, vars, xs, n


def _cap(a: TruncSeries, N: int) -> TruncSeries:
    if a.order is None and a.body.total_degree() <= N:
        return a
    return a.truncate(N)


def _at_origin(a: TruncSeries, xs) -> Poly:
    return a.body.subs({v: 0 for v in xs})


def _count_at(F: PseudoPoly, point: dict) -> int:
    coeffs = [Fraction(1)] + [a.body.evaluate(point) for a in F.coeffs]
    return gcd_root_count(coeffs)


def _value_at(F: PseudoPoly, point: dict):
    return F.to_series().body.evaluate(point)


def _specialize(F: PseudoPoly, values: dict) -> PseudoPoly:
    return F.map_coeffs(lambda a: TruncSeries(a.body.subs(values), a.order))


def _param_points(params, samples: int):
    vals = small_rationals(samples)
    for k in range(samples):
        yield {p: vals[(k + r) % samples] for r, p in enumerate(params)}


def _hunt_root_count(family, k, i, xs, params, j_gen, samples):
    """Look for ``(t0, x0)`` with fewer distinct roots of ``F_i`` than generic while ``F_{i-1} != 0``."""
    F, G = family[k], family[k + 1]
    p = F.degree
    generic_count = p - j_gen + 1
    lower = xs[: i - 1]
    generic_point = None
    for tp in _param_points(params, samples):
        for x0 in _grid(len(lower)):
            pt = dict(tp)
            pt.update({v: Fraction(c) for v, c in zip(lower, x0)})
            pt.update({v: Fraction(0) for v in xs[i - 1:]})
            if _count_at(F, pt) == generic_count:
                generic_point = pt
                break
        if generic_point is not None:
            break
    if generic_point is None:
        return None
    for tp in _param_points(params, samples):
        sliced = _specialize(F, tp)
        try:
            j0, _, _ = first_nonvanishing(sliced)
        except TruncationTooCoarse:
            continue
        if j0 <= j_gen:
            continue
        for x0 in _grid(len(lower)):
            pt = dict(tp)
            pt.update({v: Fraction(c) for v, c in zip(lower, x0)})
            pt.update({v: Fraction(0) for v in xs[i - 1:]})
            count = _count_at(F, pt)
            if count < generic_count and _value_at(G, pt) != 0:
                return Witness(
                    3,
                    i,
                    "root-count",
                    f"F_{i} has {count} distinct roots at {_fmt_point(pt, params, lower)} "
                    f"but {generic_count} at a generic point, while F_{i - 1} does not vanish there",
                    {
                        "point": {v: pt[v] for v in (*params, *lower)},
                        "roots_at_point": count,
                        "generic_point": {v: generic_point[v] for v in (*params, *lower)},
                        "generic_roots": generic_count,
                        "lower_value": _value_at(G, pt),
                    },
                )
    return None


def _fmt_point(pt, params, lower):
    return "(" + ", ".join(f"{v}={pt[v]}" for v in (*params, *lower)) + ")"


def check_system(family, N: int, params=("t",), samples: int = 32) -> EquisingVerdict:
    """Check conditions (2)-(5) to total degree ``N``."""
    params = tuple(params)
    family, vars, xs, n = _validate(family, params)
    family = [F.map_coeffs(lambda a: _cap(a, N)) for F in family]
    witnesses = []
    notes3 = []

    # (2)
    lv2 = {}
    for k, F in enumerate(family):
        i = n - k
        if F.degree == 0:
            lv2[i] = HOLDS_EXACTLY
            continue
        verdict = HOLDS_EXACTLY if F.is_exact else HOLDS_TO_ORDER
        for j, a in enumerate(F.coeffs, start=1):
            rest = _at_origin(a, xs)
            if not rest.is_zero():
                verdict = FAILS
                witnesses.append(
                    Witness(2, i, "coefficient-at-origin",
                            f"coefficient a_{i - 1},{j} of F_{i} at x=0 is {rest.to_str()}, not identically 0",
                            {"coefficient": j, "value": rest})
                )
                break
        lv2[i] = verdict

    # (3)
    lv3 = {}
    for k in range(n):
        i = n - k
        F, G = family[k], family[k + 1]
        if F.degree == 0:
            lv3[i] = HOLDS_EXACTLY
            continue
        try:
            j, delta, qual = first_nonvanishing(F)
        except TruncationTooCoarse as exc:
            lv3[i] = UNKNOWN
            notes3.append(f"level {i}: {exc}")
            continue
        A = G.to_series() if G.degree else TruncSeries(Poly.constant(vars, 1, F.field))
        try:
            res = divides_to_order(A, delta, N)
        except TruncationTooCoarse as exc:
            res = DivisionResult(False, None)
            notes3.append(f"level {i}: {exc}")
        if res.ok:
            exact = res.exact and qual == "exact"
            lv3[i] = HOLDS_EXACTLY if exact else HOLDS_TO_ORDER
            continue
        w = None
        if F.is_exact and G.is_exact and params:
            w = _hunt_root_count(family, k, i, xs, params, j, samples)
        if w is not None:
            witnesses.append(w)
            lv3[i] = FAILS
        else:
            lv3[i] = UNKNOWN
            where = f" (first obstruction in degree {res.obstruction_degree})" if res.obstruction_degree is not None else ""
            notes3.append(
                f"level {i}: Delta_{j} of F_{i} does not divide F_{i - 1}{where}; "
                "cannot certify by the sufficient criterion"
            )

    # (4)
    lv4 = {}
    for k, F in enumerate(family):
        i = n - k
        if F.degree == 0:
            lv4[i] = HOLDS_EXACTLY
            continue
        val = _at_origin(F.coeffs[-1], xs)
        if val.is_zero():
            lv4[i] = HOLDS_EXACTLY if F.is_exact else HOLDS_TO_ORDER
        else:
            lv4[i] = FAILS
            witnesses.append(
                Witness(4, i, "value-at-origin", f"F_{i}(t, 0) = {val.to_str()} is neither 0 nor is F_{i} = 1",
                        {"value": val})
            )

    # (5)
    last = family[-1]
    if last.degree == 0:
        v5 = HOLDS_EXACTLY
    else:
        v5 = FAILS
        witnesses.append(Witness(5, 0, "last-not-one", f"F_0 has degree {last.degree}, not the constant 1",
                                 {"degree": last.degree}))

    conditions = {
        2: ConditionResult(combine(lv2.values()), lv2),
        3: ConditionResult(combine(lv3.values()), lv3, tuple(notes3)),
        4: ConditionResult(combine(lv4.values()), lv4),
        5: ConditionResult(v5, {0: v5}),
    }
    meta = {"condition_1": f"the hypersurface is F_{n} = 0 (definitional, not tested)", "samples": samples}
    return EquisingVerdict(conditions, N, params, tuple(witnesses), meta)


def replay_witness(w: Witness, family, params=("t",)) -> bool:
    """Re-derive a failure witness with exact arithmetic; True when it still refutes."""
    params = tuple(params)
    family, vars, xs, n = _validate(family, params)
    k = n - w.level
    F = family[k]
    if w.kind == "coefficient-at-origin":
        rest = _at_origin(F.coeffs[w.data["coefficient"] - 1], xs)
        return not rest.is_zero() and rest == w.data["value"]
    if w.kind == "value-at-origin":
        val = _at_origin(F.coeffs[-1], xs)
        return F.degree > 0 and not val.is_zero()
    if w.kind == "last-not-one":
        return family[-1].degree > 0
    if w.kind == "root-count":
        G = family[k + 1]
        fill = {v: Fraction(0) for v in xs}
        pt = dict(fill)
        pt.update(w.data["point"])
        gp = dict(fill)
        gp.update(w.data["generic_point"])
        count = _count_at(F, pt)
        generic = _count_at(F, gp)
        return count < generic and _value_at(G, pt) != 0
    raise ValueError(f"unknown witness kind {w.kind!r}")
