"""Weierstrass preparation for truncated series regular in one variable."""

from __future__ import annotations

from fractions import Fraction

from .errors import NotRegular
from .poly import Poly
from .series import PseudoPoly, TruncSeries, is_regular


def series_inverse(u: Poly, N: int) -> Poly:
    """Inverse of a unit modulo total degree ``N + 1``."""
    c0 = u.constant_term()
    if c0 == 0:
        raise ZeroDivisionError("series with zero constant term is not a unit")
    inv0 = Fraction(1) / c0
    parts = [u.homogeneous(d) for d in range(N + 1)]
    inv = [Poly.constant(u.vars, inv0, u.field)]
    for d in range(1, N + 1):
        acc = Poly.zero(u.vars, u.field)
        for e in range(1, d + 1):
            if not parts[e].is_zero() and not inv[d - e].is_zero():
                acc = acc + parts[e] * inv[d - e]
        inv.append(acc.scale(-inv0))
    total = Poly.zero(u.vars, u.field)
    for part in inv:
        total = total + part
    return total


def _split(f: Poly, main: int, p: int):
    """``f = x^p * hi + lo`` with ``lo`` of degree below ``p`` in ``x_main``."""
    hi, lo = {}, {}
    for e, c in f.terms.items():
        if e[main] >= p:
            hi[e[:main] + (e[main] - p,) + e[main + 1:]] = c
        else:
            lo[e] = c
    return Poly(f.vars, hi, f.field), Poly(f.vars, lo, f.field)


def weierstrass_prepare(f, main: int, p: int, N: int, params=()):
    """Factor ``f = u * W`` modulo total degree ``N + 1``.

    ``f`` must have order exactly ``p`` at the origin and contain
    ``x_main^p``. The Weierstrass polynomial comes from dividing ``x_main^p``
    by ``f``: writing ``f = x^p U + R``, the quotient ``Q = qU`` is the fixed
    point of ``Q = hi(x^p - Q U^-1 R)``; then ``W = x^p - r`` and ``u = 1/q``.

    Returns ``(u, W)``; ``u`` is known to order ``N - p`` and the ``j``-th
    coefficient of ``W`` to order ``N - p + j``. When ``f`` is an exact
    polynomial and the factors multiply back to it exactly, both are
    returned as exact.
    """
    if isinstance(f, Poly):
        f = TruncSeries(f)
    n_eff = N if f.order is None else min(N, f.order)
    if n_eff < p:
        raise NotRegular(f"truncation order {n_eff} below the Weierstrass degree {p}")
    F = f.body.truncate(n_eff)
    if not is_regular(TruncSeries(F), main, p):
        raise NotRegular(
            f"series not regular of order {p} in {f.vars[main]!r} (order at 0 is {F.ord()})"
        )
    vars, field = f.vars, f.field
    x = Poly.var(vars, vars[main], field)
    xp = x ** p
    if p == 0:
        one = PseudoPoly.one(main, vars, field, params)
        return TruncSeries(F, f.order if f.order is None else n_eff), one

    U, R = _split(F, main, p)
    u_inv = series_inverse(U, n_eff - p)
    UinvR = u_inv.mul_trunc(R, n_eff)
    Q = Poly.zero(vars, field)
    r = Poly.zero(vars, field)
    # the correction gains at least one degree in the other variables per pass
    for _ in range(n_eff + 2):
        h = xp - Q.mul_trunc(UinvR, n_eff)
        Qn, r = _split(h, main, p)
        if Qn == Q:
            break
        Q = Qn
    else:  # pragma: no cover - bounded by the degree argument above
        raise RuntimeError("Weierstrass iteration did not stabilise")

    q = Q.mul_trunc(u_inv, n_eff - p)
    u_body = series_inverse(q, n_eff - p)
    W_body = xp - r
    parts = W_body.coeffs_in(main)
    zero = Poly.zero(vars, field)

    exact = f.order is None and (u_body * W_body) == f.body
    coeffs = []
    for j in range(1, p + 1):
        order = None if exact else n_eff - p + j
        coeffs.append(TruncSeries(parts.get(p - j, zero), order))
    u = TruncSeries(u_body, None if exact else n_eff - p)
    return u, PseudoPoly(main, tuple(coeffs), vars, field, params)
