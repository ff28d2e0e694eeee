"""Sparse multivariate polynomials with exact coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .scalars import COMPLEX, FIELDS, REAL, FieldError, QQi, format_scalar, to_scalar


class VariableMismatch(ValueError):
    """Raised when two polynomials live over different variable lists."""


class NotDivisible(ArithmeticError):
    """Raised by :meth:`Poly.divexact` when the division leaves a remainder."""


def _add_exps(a, b):
    return tuple(x + y for x, y in zip(a, b))


def grlex_key(exps):
    return (sum(exps), exps)


class Poly:
    """Immutable polynomial: a map from exponent tuples to nonzero scalars.

    ``vars`` fixes the meaning of each exponent slot. ``field`` is ``"real"``
    (rational coefficients only) or ``"complex"`` (Gaussian rationals allowed).
    """

    __slots__ = ("vars", "terms", "field")

    def __init__(self, vars: Sequence[str], terms: Mapping | None = None, field: str = REAL):
        if field not in FIELDS:
            raise ValueError(f"unknown field mode {field!r}")
        vars = tuple(vars)
        if len(set(vars)) != len(vars):
            raise ValueError(f"repeated variable in {vars}")
        clean = {}
        n = len(vars)
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != n or any(k < 0 for k in e):
                raise ValueError(f"bad exponent vector {e} for variables {vars}")
            c = to_scalar(c, field)
            if c != 0:
                clean[e] = c
        object.__setattr__(self, "vars", vars)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "field", field)

    @classmethod
    def _raw(cls, vars, terms, field):
        p = object.__new__(cls)
        object.__setattr__(p, "vars", vars)
        object.__setattr__(p, "terms", terms)
        object.__setattr__(p, "field", field)
        return p

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, vars, field=REAL):
        return cls._raw(tuple(vars), {}, field)

    @classmethod
    def constant(cls, vars, c, field=REAL):
        vars = tuple(vars)
        return cls(vars, {(0,) * len(vars): c}, field)

    @classmethod
    def var(cls, vars, name, field=REAL):
        vars = tuple(vars)
        k = vars.index(name)
        e = [0] * len(vars)
        e[k] = 1
        return cls._raw(vars, {tuple(e): Fraction(1)}, field)

    @classmethod
    def monomial(cls, vars, exps, c=1, field=REAL):
        return cls(tuple(vars), {tuple(exps): c}, field)

    def _like(self, terms):
        return Poly._raw(self.vars, terms, self.field)

    # -- predicates and basic data ----------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    def total_degree(self) -> int:
        """Largest total degree of a term; ``-1`` for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def ord(self):
        """Smallest total degree of a term; ``None`` for the zero polynomial."""
        return min((sum(e) for e in self.terms), default=None)

    def degree_in(self, k: int) -> int:
        return max((e[k] for e in self.terms), default=-1)

    def involves(self, k: int) -> bool:
        return any(e[k] for e in self.terms)

    def used_vars(self) -> tuple[str, ...]:
        return tuple(v for k, v in enumerate(self.vars) if self.involves(k))

    def sorted_terms(self):
        """Terms in descending graded-lexicographic order."""
        return sorted(self.terms.items(), key=lambda it: grlex_key(it[0]), reverse=True)

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "Poly"):
        if other.vars != self.vars:
            raise VariableMismatch(f"variables {self.vars} vs {other.vars}")
        if other.field != self.field:
            raise FieldError(f"field {self.field} vs {other.field}")

    def _lift(self, other):
        if isinstance(other, Poly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, QQi)):
            return Poly.constant(self.vars, other, self.field)
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, 0) + c
            if s == 0:
                terms.pop(e, None)
            else:
                terms[e] = s
        return self._like(terms)

    __radd__ = __add__

    def __neg__(self):
        return self._like({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, c) -> "Poly":
        c = to_scalar(c, self.field)
        if c == 0:
            return self._like({})
        return self._like({e: v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, QQi)):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.mul_trunc(other, None)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, QQi)):
            return self.scale(other)
        return NotImplemented

    def mul_trunc(self, other: "Poly", N: int | None) -> "Poly":
        """Product with every term of total degree above ``N`` dropped."""
        self._check(other)
        terms: dict = {}
        a_items = list(self.terms.items())
        b_items = list(other.terms.items())
        if N is not None:
            a_items = [(e, c, sum(e)) for e, c in a_items]
            b_items = [(e, c, sum(e)) for e, c in b_items]
            for ea, ca, da in a_items:
                room = N - da
                if room < 0:
                    continue
                for eb, cb, db in b_items:
                    if db > room:
                        continue
                    key = _add_exps(ea, eb)
                    terms[key] = terms.get(key, 0) + ca * cb
        else:
            for ea, ca in a_items:
                for eb, cb in b_items:
                    key = _add_exps(ea, eb)
                    terms[key] = terms.get(key, 0) + ca * cb
        return self._like({e: c for e, c in terms.items() if c != 0})

    def pow_trunc(self, n: int, N: int | None = None) -> "Poly":
        if n < 0:
            raise ValueError("negative exponent")
        result = Poly.constant(self.vars, 1, self.field)
        base = self
        while n:
            if n & 1:
                result = result.mul_trunc(base, N)
            n >>= 1
            if n:
                base = base.mul_trunc(base, N)
        return result

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        return self.pow_trunc(n, None)

    def __truediv__(self, c):
        if isinstance(c, (int, Fraction, QQi)):
            return self.scale(Fraction(1) / c)
        return NotImplemented

    def divexact(self, other: "Poly") -> "Poly":
        """Exact quotient ``self / other``; raises :class:`NotDivisible` otherwise."""
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        lm_b = max(other.terms)
        lc_b = other.terms[lm_b]
        if len(other.terms) == 1:
            q = {}
            for e, c in self.terms.items():
                d = tuple(x - y for x, y in zip(e, lm_b))
                if any(k < 0 for k in d):
                    raise NotDivisible("monomial does not divide")
                q[d] = c / lc_b
            return self._like(q)
        rem = dict(self.terms)
        q = {}
        b_items = list(other.terms.items())
        while rem:
            lm = max(rem)
            d = tuple(x - y for x, y in zip(lm, lm_b))
            if any(k < 0 for k in d):
                raise NotDivisible(f"leading monomial {lm} not divisible by {lm_b}")
            c = rem[lm] / lc_b
            q[d] = c
            for eb, cb in b_items:
                key = _add_exps(eb, d)
                v = rem.get(key, 0) - c * cb
                if v == 0:
                    rem.pop(key, None)
                else:
                    rem[key] = v
        return self._like(q)

    # -- structure ----------------------------------------------------------

    def truncate(self, N: int | None) -> "Poly":
        if N is None:
            return self
        return self._like({e: c for e, c in self.terms.items() if sum(e) <= N})

    def homogeneous(self, d: int) -> "Poly":
        return self._like({e: c for e, c in self.terms.items() if sum(e) == d})

    def lowest_form(self) -> "Poly":
        o = self.ord()
        return self if o is None else self.homogeneous(o)

    def coeffs_in(self, k: int) -> dict[int, "Poly"]:
        """Split along variable ``k``: ``{power: coefficient polynomial}``."""
        out: dict[int, dict] = {}
        for e, c in self.terms.items():
            rest = e[:k] + (0,) + e[k + 1:]
            out.setdefault(e[k], {})[rest] = c
        return {p: self._like(t) for p, t in out.items()}

    def shift(self, k: int, amount: int) -> "Poly":
        """Multiply by ``vars[k] ** amount`` (``amount`` may be negative if exact)."""
        terms = {}
        for e, c in self.terms.items():
            ne = e[:k] + (e[k] + amount,) + e[k + 1:]
            if ne[k] < 0:
                raise NotDivisible("negative exponent after shift")
            terms[ne] = c
        return self._like(terms)

    def diff(self, k: int) -> "Poly":
        terms = {}
        for e, c in self.terms.items():
            if e[k]:
                terms[e[:k] + (e[k] - 1,) + e[k + 1:]] = c * e[k]
        return self._like(terms)

    def with_vars(self, new_vars: Sequence[str]) -> "Poly":
        """Re-express over ``new_vars``; every used variable must be present."""
        new_vars = tuple(new_vars)
        if new_vars == self.vars:
            return self
        pos = {v: i for i, v in enumerate(new_vars)}
        used = self.used_vars()
        missing = [v for v in used if v not in pos]
        if missing:
            raise VariableMismatch(f"variables {missing} absent from {new_vars}")
        idx = [(pos[v], k) for k, v in enumerate(self.vars) if v in pos]
        terms = {}
        for e, c in self.terms.items():
            ne = [0] * len(new_vars)
            for i, k in idx:
                ne[i] = e[k]
            terms[tuple(ne)] = c
        return Poly._raw(new_vars, terms, self.field)

    def with_field(self, field: str) -> "Poly":
        if field == self.field:
            return self
        if field == REAL and any(isinstance(c, QQi) for c in self.terms.values()):
            raise FieldError("polynomial has non-real coefficients")
        return Poly._raw(self.vars, dict(self.terms), field)

    def compose(self, images: Sequence["Poly"], N: int | None = None) -> "Poly":
        """Substitute ``images[k]`` for ``vars[k]``; drop degrees above ``N``.

        All images must share one variable list and field.
        """
        if len(images) != len(self.vars):
            raise ValueError("need one image per variable")
        if not images:
            return self
        target = images[0]
        for im in images[1:]:
            target._check(im)
        field = COMPLEX if COMPLEX in (self.field, target.field) else REAL
        imgs = [im.with_field(field) for im in images]
        one = Poly.constant(target.vars, 1, field)
        powers: list[dict[int, Poly]] = [{0: one} for _ in imgs]

        def power(k, n):
            cache = powers[k]
            if n not in cache:
                best = max(j for j in cache if j < n)
                cur = cache[best]
                for j in range(best + 1, n + 1):
                    cur = cur.mul_trunc(imgs[k], N)
                    cache[j] = cur
            return cache[n]

        acc: dict = {}
        for e, c in self.terms.items():
            term = Poly._raw(target.vars, {(0,) * len(target.vars): c}, field)
            for k, n in enumerate(e):
                if n:
                    term = term.mul_trunc(power(k, n), N)
                    if term.is_zero():
                        break
            for te, tc in term.terms.items():
                acc[te] = acc.get(te, 0) + tc
        return Poly._raw(target.vars, {e: c for e, c in acc.items() if c != 0}, field)

    def subs(self, values: Mapping[str, object], N: int | None = None) -> "Poly":
        """Substitute polynomials or scalars for some variables by name."""
        images = []
        for k, v in enumerate(self.vars):
            val = values.get(v)
            if val is None:
                images.append(Poly.var(self.vars, v, self.field))
            elif isinstance(val, Poly):
                images.append(val)
            else:
                images.append(Poly.constant(self.vars, val, self.field))
        target = next((im for im in images if isinstance(im, Poly) and im.vars != self.vars), None)
        if target is not None:
            images = [im if im.vars == target.vars else im.with_vars(target.vars) for im in images]
        if any(isinstance(c, QQi) for im in images for c in im.terms.values()):
            images = [im.with_field(COMPLEX) for im in images]
        return self.compose(images, N)

    def evaluate(self, point: Mapping[str, object]):
        """Evaluate at a full point given by name; returns a scalar."""
        total = Fraction(0)
        vals = [to_scalar(point[v], COMPLEX) for v in self.vars]
        for e, c in self.terms.items():
            t = c
            for x, n in zip(vals, e):
                if n:
                    t = t * x ** n
            total = total + t
        return total

    # -- comparison and text -----------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.vars == other.vars and self.field == other.field and self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, self.field, frozenset(self.terms.items())))

    def to_str(self) -> str:
        """Canonical text in the expression grammar (descending grlex)."""
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                v if n == 1 else f"{v}^{n}" for v, n in zip(self.vars, e) if n
            )
            neg = False
            if isinstance(c, QQi):
                if c.re == 0 and c.im < 0:
                    neg, c = True, -c
                cs = format_scalar(c)
            else:
                if c < 0:
                    neg, c = True, -c
                cs = format_scalar(c)
            if mono:
                body = mono if cs == "1" else f"{cs}*{mono}"
            else:
                body = cs
            parts.append((neg, body))
        out = ("-" if parts[0][0] else "") + parts[0][1]
        for neg, body in parts[1:]:
            out += (" - " if neg else " + ") + body
        return out

    __str__ = to_str

    def __repr__(self):
        return f"Poly({self.to_str()!r}, vars={self.vars})"


def poly_sum(polys: Iterable[Poly], vars, field=REAL) -> Poly:
    acc = Poly.zero(vars, field)
    for p in polys:
        acc = acc + p
    return acc
