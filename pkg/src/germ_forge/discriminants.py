"""Generalized discriminants of a monic polynomial.

For ``f(T) = T^p + a_1 T^(p-1) + ... + a_p`` with roots ``T_1..T_p``,

    Delta_j = sum over ordered (j-1)-tuples of pairwise distinct root indices
              of prod_{k<l, k,l not in the tuple} (T_k - T_l)^2.

``f`` has exactly ``p - j + 1`` distinct roots when ``Delta_j`` is the first
nonvanishing one. Two routes compute the ``Delta_j``:

* the oracle expands the root expression and rewrites it through
  elementary symmetric functions (``a_k = (-1)^k e_k``); it is exponential
  in ``p`` and capped at :data:`ORACLE_BOUND`;
* the production route reads the principal subresultant coefficients of
  ``(f, f')`` off the subresultant remainder sequence:
  ``Delta_j = (j-1)! * (-1)^((p-j+1)(p-j)/2) * psc_{j-1}(f, f')``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations

from .errors import TruncationTooCoarse
from .poly import Poly
from .series import PseudoPoly, TruncSeries, Vanishing, _min_order

ORACLE_BOUND = 5


def coeff_names(p: int) -> tuple[str, ...]:
    return tuple(f"a{k}" for k in range(1, p + 1))


# -- symmetric-function oracle -------------------------------------------


def _root_expression(p: int, j: int) -> dict:
    """The defining sum in the roots, as ``{exponents: coefficient}``."""
    T = tuple(f"T{k}" for k in range(1, p + 1))
    roots = [Poly.var(T, v) for v in T]
    cache: dict = {}
    total = Poly.zero(T)
    for tup in permutations(range(p), j - 1):
        rest = frozenset(range(p)) - frozenset(tup)
        if rest not in cache:
            prod = Poly.constant(T, 1)
            for k, l in combinations(sorted(rest), 2):
                d = roots[k] - roots[l]
                prod = prod * d * d
            cache[rest] = prod
        total = total + cache[rest]
    return total


def _elementary(p: int) -> list[Poly]:
    T = tuple(f"T{k}" for k in range(1, p + 1))
    out = []
    for k in range(1, p + 1):
        terms = {}
        for idx in combinations(range(p), k):
            e = [0] * p
            for i in idx:
                e[i] = 1
            terms[tuple(e)] = 1
        out.append(Poly(T, terms))
    return out


def _to_elementary(sym: Poly, p: int) -> dict:
    """Write a symmetric polynomial as ``{(d_1..d_p): c}`` meaning ``c * prod e_k^d_k``."""
    es = _elementary(p)
    powers = [{0: Poly.constant(sym.vars, 1)} for _ in range(p)]

    def epow(k, n):
        cache = powers[k]
        if n not in cache:
            cache[n] = epow(k, n - 1) * es[k]
        return cache[n]

    rem = {e: c for e, c in sym.terms.items() if all(e[i] >= e[i + 1] for i in range(p - 1))}
    out = {}
    while rem:
        lead = max(rem)
        c = rem[lead]
        d = tuple(lead[k] - (lead[k + 1] if k + 1 < p else 0) for k in range(p))
        out[d] = c
        prod = Poly.constant(sym.vars, c)
        for k, n in enumerate(d):
            if n:
                prod = prod * epow(k, n)
        for e, v in prod.terms.items():
            if all(e[i] >= e[i + 1] for i in range(p - 1)):
                nv = rem.get(e, 0) - v
                if nv == 0:
                    rem.pop(e, None)
                else:
                    rem[e] = nv
    return out


@lru_cache(maxsize=None)
def gen_disc_oracle(p: int, j: int) -> Poly:
    """``Delta_j`` of the generic monic degree-``p`` polynomial, over ``a1..ap``."""
    if not 1 <= j <= p:
        raise ValueError(f"need 1 <= j <= p, got p={p}, j={j}")
    if p > ORACLE_BOUND:
        raise ValueError(f"oracle limited to degree <= {ORACLE_BOUND} (got {p})")
    sym = _root_expression(p, j)
    A = coeff_names(p)
    terms = {}
    for d, c in _to_elementary(sym, p).items():
        sign = (-1) ** sum((k + 1) * n for k, n in enumerate(d))
        terms[d] = c * sign
    return Poly(A, terms)


# -- subresultant remainder sequence --------------------------------------


class _Domain:
    """Arithmetic for dense univariate polynomials over an exact ring."""

    def __init__(self, zero, one, quo):
        self.zero = zero
        self.one = one
        self.quo = quo

    def is_zero(self, c):
        return c.is_zero() if isinstance(c, Poly) else c == 0


def _strip(f, dom):
    i = 0
    while i < len(f) and dom.is_zero(f[i]):
        i += 1
    return f[i:]


def _deg(f):
    return len(f) - 1


def _prem(f, g, dom):
    """Pseudo-remainder of ``lc(g)^(deg f - deg g + 1) * f`` by ``g`` (dense, highest first)."""
    df, dg = _deg(f), _deg(g)
    r = list(f)
    if df < dg:
        return r
    lc = g[0]
    steps = df - dg + 1
    for _ in range(steps):
        if _deg(r) < dg:
            r = [c * lc for c in r]
            continue
        lr = r[0]
        r = [c * lc for c in r]
        for k in range(len(g)):
            r[k] = r[k] - lr * g[k]
        r = _strip(r[1:], dom)
    return r


def _pow(c, n, dom):
    out = dom.one
    for _ in range(n):
        out = out * c
    return out


def subresultant_prs(f, g, dom):
    """Subresultant PRS of ``f, g`` (``deg f > deg g``) with the matching principal coefficients.

    Returns ``(R, S)`` where ``S[i]`` is the principal subresultant
    coefficient of index ``deg R[i]`` for ``i >= 1`` (``S[0] = 1`` by convention).
    """
    n, m = _deg(f), _deg(g)
    if n <= m:
        raise ValueError("need deg f > deg g")
    R = [f, g]
    d = n - m
    b = _pow(-dom.one, d + 1, dom)
    h = [c * b for c in _prem(f, g, dom)]
    lc = g[0]
    c = _pow(lc, d, dom)
    S = [dom.one, c]
    c = -c
    while h:
        k = _deg(h)
        R.append(h)
        f, g, m, d = g, h, k, m - k
        b = -lc * _pow(c, d, dom)
        h = [dom.quo(x, b) for x in _prem(f, g, dom)]
        lc = g[0]
        if d > 1:
            q = _pow(c, d - 1, dom)
            c = dom.quo(_pow(-lc, d, dom), q)
        else:
            c = -lc
        S.append(-c)
    return R, S


def principal_subresultants(f, g, dom) -> list:
    """``[psc_0, ..., psc_{deg g}]`` of ``f`` and ``g`` (dense, highest first)."""
    m = _deg(g)
    R, S = subresultant_prs(f, g, dom)
    psc = [dom.zero] * (m + 1)
    for r, s in zip(R[1:], S[1:]):
        psc[_deg(r)] = s
    return psc


def _subresultant_discs(coeffs: list[Poly]) -> list[Poly]:
    """All ``Delta_j`` for the monic polynomial with the given coefficient bodies."""
    p = len(coeffs)
    vars, field = coeffs[0].vars, coeffs[0].field
    one = Poly.constant(vars, 1, field)
    zero = Poly.zero(vars, field)
    dom = _Domain(zero, one, lambda a, b: a.divexact(b))
    f = [one] + list(coeffs)
    df = [one.scale(p - k) if k == 0 else coeffs[k - 1].scale(p - k) for k in range(p)]
    df = _strip(df, dom)
    psc = principal_subresultants(f, df, dom)
    out = []
    for j in range(1, p + 1):
        sign = (-1) ** ((p - j + 1) * (p - j) // 2)
        out.append(psc[j - 1].scale(math.factorial(j - 1) * sign))
    return out


def disc_normalization(p: int, j: int) -> int:
    """Constant relating ``Delta_j`` to ``psc_{j-1}(f, f')``."""
    return math.factorial(j - 1) * (-1) ** ((p - j + 1) * (p - j) // 2)


# -- public operations ------------------------------------------------------


@dataclass(frozen=True)
class GenDiscVector:
    degree: int
    deltas: tuple
    route: str

    def vanishing_pattern(self) -> tuple:
        return tuple(d.vanishing() for d in self.deltas)


def _coeff_bodies(F: PseudoPoly) -> list[Poly]:
    return [a.body for a in F.coeffs]


def _oracle_disc(F: PseudoPoly, j: int) -> Poly:
    p = F.degree
    delta = gen_disc_oracle(p, j)
    if delta.is_constant():
        return Poly.constant(F.vars, delta.constant_term(), F.field)
    return delta.with_field(F.field).compose(_coeff_bodies(F))


def _choose_route(p: int, route: str) -> str:
    if route == "auto":
        return "oracle" if p <= ORACLE_BOUND else "subresultant"
    if route not in ("oracle", "subresultant"):
        raise ValueError(f"unknown route {route!r}")
    return route


def gen_discriminants(F: PseudoPoly, route: str = "auto") -> GenDiscVector:
    """All generalized discriminants of ``F`` as series in its coefficient variables."""
    p = F.degree
    if p == 0:
        return GenDiscVector(0, (), "none")
    route = _choose_route(p, route)
    order = F.order
    if route == "oracle":
        bodies = [_oracle_disc(F, j) for j in range(1, p + 1)]
    else:
        bodies = _subresultant_discs(_coeff_bodies(F))
    return GenDiscVector(p, tuple(TruncSeries(b, order) for b in bodies), route)


EXACT = "exact"
TO_ORDER = "to-order"


def first_nonvanishing(F: PseudoPoly, route: str = "auto"):
    """``(j, Delta_j, qualifier)`` for the first ``Delta_j`` not vanishing to the known order.

    The qualifier is ``"exact"`` when every earlier ``Delta_i`` is exactly zero
    and ``"to-order"`` when some only vanish up to the truncation order.
    """
    p = F.degree
    if p == 0:
        raise ValueError("the constant pseudopolynomial 1 has no discriminants")
    route = _choose_route(p, route)
    order = F.order
    qualifier = EXACT
    if route == "oracle":
        deltas = (TruncSeries(_oracle_disc(F, j), order) for j in range(1, p + 1))
    else:
        deltas = iter(gen_discriminants(F, route).deltas)
    for j, d in enumerate(deltas, start=1):
        status = d.vanishing()
        if status is Vanishing.NONZERO:
            return j, d, qualifier
        if status is Vanishing.ZERO_TO_ORDER:
            qualifier = TO_ORDER
    raise TruncationTooCoarse(
        f"every generalized discriminant vanishes to order {order}; truncation too coarse"
    )


def distinct_root_count(F: PseudoPoly, route: str = "auto") -> int:
    j, _, _ = first_nonvanishing(F, route)
    return F.degree - j + 1


def univariate(coeffs, var: str = "T", field: str = "real") -> PseudoPoly:
    """Monic ``T^p + coeffs[0] T^(p-1) + ...`` with constant scalar coefficients."""
    vars = (var,)
    return PseudoPoly(
        0, tuple(TruncSeries(Poly.constant(vars, c, field)) for c in coeffs), vars, field
    )


def sylvester_psc(f: list, g: list, k: int) -> Fraction:
    """Principal subresultant coefficient by its determinant definition (rational input)."""
    n, m = len(f) - 1, len(g) - 1
    size = n + m - 2 * k
    rows = []
    for s in range(m - k):
        row = [Fraction(0)] * size
        for idx, c in enumerate(f):
            col = s + idx
            if col < size:
                row[col] = Fraction(c)
        rows.append(row)
    for s in range(n - k):
        row = [Fraction(0)] * size
        for idx, c in enumerate(g):
            col = s + idx
            if col < size:
                row[col] = Fraction(c)
        rows.append(row)
    return _det(rows)


def _det(a) -> Fraction:
    a = [list(r) for r in a]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            fct = a[r][c] / a[c][c]
            if fct:
                for k in range(c, n):
                    a[r][k] -= fct * a[c][k]
    return det


# -- univariate helpers over the scalar field ---------------------------------


def _trim(f: list) -> list:
    i = 0
    while i < len(f) and f[i] == 0:
        i += 1
    return f[i:]


def _urem(f: list, g: list) -> list:
    r = list(f)
    while len(r) >= len(g):
        q = r[0] / g[0]
        for k in range(len(g)):
            r[k] = r[k] - q * g[k]
        r = _trim(r[1:])
    return r


def ugcd(f: list, g: list) -> list:
    """Monic gcd of two dense univariate polynomials (highest degree first)."""
    f, g = _trim(list(f)), _trim(list(g))
    while g:
        f, g = g, _urem(f, g)
    if not f:
        return []
    lead = f[0]
    return [c / lead for c in f]


def uderiv(f: list) -> list:
    n = len(f) - 1
    return _trim([c * (n - k) for k, c in enumerate(f[:-1])])


def gcd_root_count(f: list) -> int:
    """Number of distinct complex roots: ``deg f - deg gcd(f, f')``."""
    f = _trim([Fraction(c) if isinstance(c, int) else c for c in f])
    if not f:
        raise ValueError("zero polynomial has no finite root count")
    d = len(f) - 1
    if d == 0:
        return 0
    return d - (len(ugcd(f, uderiv(f))) - 1)
