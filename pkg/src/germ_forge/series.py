"""Truncated power series, distinguished polynomials and linear coordinate changes."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field as dc_field
from enum import Enum
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import JetBeyondTruncation, RegularDirectionExhausted
from .poly import Poly, VariableMismatch
from .scalars import REAL, QQi


class Vanishing(str, Enum):
    EXACT_ZERO = "exact-zero"
    ZERO_TO_ORDER = "zero-to-order"
    NONZERO = "nonzero"


def _min_order(*orders):
    finite = [o for o in orders if o is not None]
    return min(finite) if finite else None


@dataclass(frozen=True)
class TruncSeries:
    """A series known modulo total degree ``order + 1``.

    ``order=None`` marks an exact polynomial. The body never stores terms
    above the order.
    """

    body: Poly
    order: int | None = None

    def __post_init__(self):
        if self.order is not None:
            if self.order < 0:
                raise ValueError("truncation order must be nonnegative")
            object.__setattr__(self, "body", self.body.truncate(self.order))

    @classmethod
    def exact(cls, p: Poly) -> "TruncSeries":
        return cls(p, None)

    @classmethod
    def constant(cls, vars, c, field=REAL) -> "TruncSeries":
        return cls(Poly.constant(vars, c, field), None)

    @property
    def vars(self):
        return self.body.vars

    @property
    def field(self):
        return self.body.field

    @property
    def is_exact(self) -> bool:
        return self.order is None

    def _check(self, other: "TruncSeries"):
        self.body._check(other.body)

    def _lift(self, other):
        if isinstance(other, TruncSeries):
            self._check(other)
            return other
        if isinstance(other, Poly):
            self.body._check(other)
            return TruncSeries(other)
        if isinstance(other, (int, Fraction, QQi)):
            return TruncSeries(Poly.constant(self.vars, other, self.field))
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return TruncSeries(self.body + other.body, _min_order(self.order, other.order))

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries(-self.body, self.order)

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return TruncSeries(self.body - other.body, _min_order(self.order, other.order))

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, QQi)):
            return TruncSeries(self.body.scale(other), self.order)
        other = self._lift(other)
        if other is None:
            return NotImplemented
        a, b = self, other
        if a.order is None and b.order is None:
            return TruncSeries(a.body * b.body)
        if a.order is not None and b.order is not None:
            # conservative: min of the two orders
            N = min(a.order, b.order)
        else:
            known, exact = (a, b) if a.order is not None else (b, a)
            if exact.body.is_zero():
                return TruncSeries(exact.body)
            N = known.order + exact.body.ord()
        return TruncSeries(a.body.mul_trunc(b.body, N), N)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = TruncSeries(Poly.constant(self.vars, 1, self.field))
        for _ in range(n):
            result = result * self
        return result

    def ord(self):
        """Order at the origin: an int, ``math.inf`` for exact zero, ``None`` if undecided."""
        o = self.body.ord()
        if o is not None:
            return o
        return math.inf if self.order is None else None

    def vanishing(self) -> Vanishing:
        if not self.body.is_zero():
            return Vanishing.NONZERO
        return Vanishing.EXACT_ZERO if self.order is None else Vanishing.ZERO_TO_ORDER

    def is_unit(self) -> bool:
        return self.body.constant_term() != 0

    def jet(self, m: int) -> Poly:
        if self.order is not None and m > self.order:
            raise JetBeyondTruncation(
                f"jet beyond truncation: asked for order {m}, series known to {self.order}"
            )
        return self.body.truncate(m)

    def tail(self, m: int) -> "TruncSeries":
        return TruncSeries(self.body - self.jet(m), self.order)

    def truncate(self, N: int) -> "TruncSeries":
        return TruncSeries(self.body, _min_order(self.order, N))

    def with_vars(self, vars) -> "TruncSeries":
        return TruncSeries(self.body.with_vars(vars), self.order)

    def with_field(self, field) -> "TruncSeries":
        return TruncSeries(self.body.with_field(field), self.order)

    def agrees_with(self, other: "TruncSeries") -> bool:
        """Equality of stored terms up to the smaller known order."""
        N = _min_order(self.order, other.order)
        return (self.body - other.body).truncate(N).is_zero()

    def __str__(self):
        s = self.body.to_str()
        return s if self.order is None else f"{s} + O({self.order + 1})"


def ord_at_origin(f) -> int | float | None:
    if isinstance(f, Poly):
        f = TruncSeries(f)
    return f.ord()


def jet(f, m: int) -> Poly:
    if isinstance(f, Poly):
        return f.truncate(m)
    return f.jet(m)


def substitute(f, sigma: Mapping[str, object]) -> TruncSeries:
    """Compose ``f`` with the images ``sigma[var]`` and track the known order.

    Every variable that ``f`` actually uses must be mapped. Images are
    TruncSeries or exact Polys over one shared variable list.
    """
    if isinstance(f, Poly):
        f = TruncSeries(f)
    images = {}
    target_vars = None
    field = f.field
    for v in f.body.used_vars():
        if v not in sigma:
            raise KeyError(f"substitution undefined for variable {v!r}")
        im = sigma[v]
        if isinstance(im, Poly):
            im = TruncSeries(im)
        if target_vars is None:
            target_vars, field = im.vars, im.field
        elif im.vars != target_vars:
            raise VariableMismatch(f"inconsistent image variables {im.vars} vs {target_vars}")
        images[v] = im
    if target_vars is None:
        # f is constant; pick any image for the target ring
        for im in sigma.values():
            im = TruncSeries(im) if isinstance(im, Poly) else im
            target_vars, field = im.vars, im.field
            break
        else:
            target_vars = f.vars
        return TruncSeries(Poly.constant(target_vars, f.body.constant_term(), field), f.order)
    order = _min_order(*(im.order for im in images.values()))
    if f.order is not None:
        if any(im.body.constant_term() != 0 for im in images.values()):
            raise ValueError("cannot compose a truncated series with an image not vanishing at 0")
        order = _min_order(order, f.order)
    zero = Poly.zero(target_vars, field)
    imgs = [images[v].body if v in images else zero for v in f.vars]
    body = f.body.compose(imgs, order)
    return TruncSeries(body, order)


@dataclass(frozen=True)
class LinearChange:
    """Substitution ``old_k = sum_l matrix[k][l] * new_l`` on the first ``size`` variables."""

    matrix: tuple
    seed: int | None = None

    def __post_init__(self):
        m = tuple(tuple(Fraction(x) for x in row) for row in self.matrix)
        object.__setattr__(self, "matrix", m)
        if any(len(row) != len(m) for row in m):
            raise ValueError("linear change matrix must be square")
        if self.determinant() == 0:
            raise ValueError("linear change must be invertible")

    @classmethod
    def identity(cls, size: int, seed=None) -> "LinearChange":
        return cls(tuple(tuple(int(i == j) for j in range(size)) for i in range(size)), seed)

    @property
    def size(self) -> int:
        return len(self.matrix)

    def is_identity(self) -> bool:
        return all(
            self.matrix[i][j] == (1 if i == j else 0)
            for i in range(self.size)
            for j in range(self.size)
        )

    def determinant(self) -> Fraction:
        a = [list(r) for r in self.matrix]
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
                f = a[r][c] / a[c][c]
                if f:
                    for k in range(c, n):
                        a[r][k] -= f * a[c][k]
        return det

    def then(self, other: "LinearChange") -> "LinearChange":
        """The change equal to applying ``self`` and then ``other`` (``old = A(B new)``)."""
        n = max(self.size, other.size)
        a = _pad(self.matrix, n)
        b = _pad(other.matrix, n)
        prod = tuple(
            tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n)
        )
        return LinearChange(prod, other.seed)

    def images(self, vars: Sequence[str], field=REAL) -> list[Poly]:
        vars = tuple(vars)
        if self.size > len(vars):
            raise ValueError("linear change acts on more variables than available")
        out = []
        for k, v in enumerate(vars):
            if k < self.size:
                terms = {}
                for l, c in enumerate(self.matrix[k]):
                    if c:
                        e = [0] * len(vars)
                        e[l] = 1
                        terms[tuple(e)] = c
                out.append(Poly(vars, terms, field))
            else:
                out.append(Poly.var(vars, v, field))
        return out

    def apply(self, f):
        """Pull ``f`` back along the change; preserves total degree and known order."""
        if isinstance(f, Poly):
            return f.compose(self.images(f.vars, f.field))
        return TruncSeries(f.body.compose(self.images(f.vars, f.field), f.order), f.order)


def _pad(m, n):
    size = len(m)
    return [
        [m[i][j] if i < size and j < size else Fraction(int(i == j)) for j in range(n)]
        for i in range(n)
    ]


def _has_pure_power(p: Poly, k: int, n: int) -> bool:
    e = [0] * len(p.vars)
    e[k] = n
    return tuple(e) in p.terms


def is_regular(f: TruncSeries, main: int, p: int) -> bool:
    """``f`` has order ``p`` at 0 and contains ``x_main^p`` with a nonzero coefficient."""
    return f.body.ord() == p and _has_pure_power(f.body, main, p)


def find_regular_direction(f, main: int, seed: int = 0, max_attempts: int = 64):
    """Find a linear change on ``x_0..x_main`` making ``f`` regular of order ``ord(f)``.

    Candidates have the shape ``x_k = x'_k + c_k x'_main`` (k < main) with
    small nonzero integers ``c_k`` drawn from a generator seeded by ``seed``;
    the identity is tried first. Returns ``(change, p)``.
    """
    if isinstance(f, Poly):
        f = TruncSeries(f)
    p = f.ord()
    if p is None or p == math.inf:
        raise ValueError("series vanishes to its known order; no regular direction")
    size = main + 1
    ident = LinearChange.identity(size, seed)
    if is_regular(f, main, p):
        return ident, p
    lowest = TruncSeries(f.body.lowest_form())
    rng = random.Random(f"germ-forge:{seed}")
    for attempt in range(1, max_attempts + 1):
        bound = 1 + attempt // 8
        cs = []
        for _ in range(main):
            c = 0
            while c == 0:
                c = rng.randint(-bound, bound)
            cs.append(c)
        rows = []
        for k in range(size):
            row = [int(k == j) for j in range(size)]
            if k < main:
                row[main] = cs[k]
            rows.append(row)
        change = LinearChange(tuple(map(tuple, rows)), seed)
        if _has_pure_power(change.apply(lowest).body, main, p):
            return change, p
    raise RegularDirectionExhausted(
        f"no regular direction for variable {f.vars[main]!r} after {max_attempts} attempts"
    )


@dataclass(frozen=True)
class PseudoPoly:
    """Monic polynomial ``x_main^p + a_1 x_main^(p-1) + ... + a_p`` with series coefficients.

    Coefficients are TruncSeries over the full ambient variable list ``vars``
    and must not involve ``x_main`` or any later non-parameter variable.
    A degree-0 instance is the constant 1.
    """

    main: int
    coeffs: tuple
    vars: tuple
    field: str = REAL
    params: tuple = dc_field(default=())

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        object.__setattr__(self, "vars", tuple(self.vars))
        object.__setattr__(self, "params", tuple(self.params))
        for a in self.coeffs:
            if a.vars != self.vars:
                raise VariableMismatch(f"coefficient over {a.vars}, expected {self.vars}")
            for k, v in enumerate(self.vars):
                if k >= self.main and v not in self.params and a.body.involves(k):
                    raise ValueError(
                        f"coefficient {a.body} involves {v!r}, not allowed below x_main={self.vars[self.main]!r}"
                    )

    @property
    def degree(self) -> int:
        return len(self.coeffs)

    @property
    def main_var(self) -> str:
        return self.vars[self.main]

    @property
    def order(self):
        return _min_order(*(a.order for a in self.coeffs))

    @property
    def is_exact(self) -> bool:
        return all(a.order is None for a in self.coeffs)

    def is_one(self) -> bool:
        return self.degree == 0

    def is_distinguished(self) -> bool:
        return all(a.body.constant_term() == 0 for a in self.coeffs)

    def to_series(self) -> TruncSeries:
        p = self.degree
        x = TruncSeries(Poly.var(self.vars, self.main_var, self.field))
        acc = x ** p
        for j, a in enumerate(self.coeffs, start=1):
            acc = acc + a * x ** (p - j)
        return acc

    def map_coeffs(self, fn) -> "PseudoPoly":
        return PseudoPoly(self.main, tuple(fn(a) for a in self.coeffs), self.vars, self.field, self.params)

    def with_vars(self, vars) -> "PseudoPoly":
        vars = tuple(vars)
        main = vars.index(self.main_var)
        return PseudoPoly(main, tuple(a.with_vars(vars) for a in self.coeffs), vars, self.field, self.params)

    @classmethod
    def one(cls, main, vars, field=REAL, params=()):
        return cls(main, (), vars, field, params)

    @classmethod
    def from_series(cls, f, main: int, params=()) -> "PseudoPoly":
        """Read a monic polynomial in ``vars[main]`` off a series or Poly."""
        if isinstance(f, Poly):
            f = TruncSeries(f)
        parts = f.body.coeffs_in(main)
        p = max(parts, default=0)
        lead = parts.get(p)
        if lead is None or lead != Poly.constant(f.vars, 1, f.field):
            raise ValueError(f"not monic in {f.vars[main]!r}: leading coefficient {lead}")
        coeffs = []
        for j in range(1, p + 1):
            c = parts.get(p - j, Poly.zero(f.vars, f.field))
            order = None if f.order is None else f.order - (p - j)
            if order is not None and order < 0:
                raise ValueError("series too coarse to read off its coefficients")
            coeffs.append(TruncSeries(c, order))
        return cls(main, tuple(coeffs), f.vars, f.field, tuple(params))

    def __str__(self):
        return str(self.to_series()) if self.degree else "1"
