"""Sparse bivariate polynomials over Q."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from . import univariate as U


def _grlex_key(mono):
    i, j = mono
    return (i + j, i)


class Poly2:
    """Immutable sparse polynomial sum c_ij x^i y^j with Fraction coefficients.

    Terms with zero coefficient are never stored. The monomial order used for
    leading terms and normalisation is graded lexicographic with x > y.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for (i, j), c in items:
                if i < 0 or j < 0:
                    raise ValueError(f"negative exponent in term {(i, j)}")
                c = Fraction(c)
                if c:
                    key = (int(i), int(j))
                    c = clean.get(key, 0) + c
                    if c:
                        clean[key] = c
                    else:
                        clean.pop(key, None)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms):
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    # -- constructors -----------------------------------------------------
    @classmethod
    def const(cls, c) -> Poly2:
        c = Fraction(c)
        return cls._raw({(0, 0): c} if c else {})

    @classmethod
    def x(cls) -> Poly2:
        return cls._raw({(1, 0): Fraction(1)})

    @classmethod
    def y(cls) -> Poly2:
        return cls._raw({(0, 1): Fraction(1)})

    @classmethod
    def monomial(cls, i, j, c=1) -> Poly2:
        return cls({(i, j): c})

    @classmethod
    def from_x_poly(cls, up) -> Poly2:
        return cls._raw({(i, 0): Fraction(c) for i, c in enumerate(up) if c})

    @classmethod
    def from_y_poly(cls, up) -> Poly2:
        return cls._raw({(0, j): Fraction(c) for j, c in enumerate(up) if c})

    # -- inspection -------------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coeff(self, i, j) -> Fraction:
        return self._terms.get((i, j), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or set(self._terms) == {(0, 0)}

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self._terms.get((0, 0), Fraction(0))

    def __len__(self):
        return len(self._terms)

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((i + j for i, j in self._terms), default=-1)

    @property
    def deg_x(self) -> int:
        return max((i for i, _ in self._terms), default=-1)

    @property
    def deg_y(self) -> int:
        return max((j for _, j in self._terms), default=-1)

    def leading_monomial(self):
        return max(self._terms, key=_grlex_key)

    def leading_coeff(self) -> Fraction:
        if not self._terms:
            return Fraction(0)
        return self._terms[self.leading_monomial()]

    def monic(self) -> Poly2:
        if not self._terms:
            return self
        return self * (1 / self.leading_coeff())

    def numeric_content(self) -> Fraction:
        return U.numeric_content(self._terms.values())

    def homogeneous_part(self, n) -> Poly2:
        return Poly2._raw({m: c for m, c in self._terms.items() if m[0] + m[1] == n})

    # -- arithmetic -------------------------------------------------------
    @staticmethod
    def _coerce(other):
        if isinstance(other, Poly2):
            return other
        if isinstance(other, (int, Rational)):
            return Poly2.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Poly2._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly2._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, Poly2):
            c = Fraction(other)
            if not c:
                return Poly2._raw({})
            return Poly2._raw({m: v * c for m, v in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if len(self._terms) < len(other._terms):
            a, b = other._terms, self._terms
        else:
            a, b = self._terms, other._terms
        out = {}
        get = out.get
        for (i2, j2), c2 in b.items():
            for (i1, j1), c1 in a.items():
                key = (i1 + i2, j1 + j2)
                out[key] = get(key, 0) + c1 * c2
        return Poly2._raw({m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, Poly2):
            return self * (1 / Fraction(other))
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        q = self.divexact(other)
        if q is None:
            raise ArithmeticError("inexact polynomial division")
        return q

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly2.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def divexact(self, other: Poly2):
        """Return self / other if the division is exact, else None."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return self
        if other.is_constant():
            return self * (1 / other.constant_value())
        lm = other.leading_monomial()
        lc = other._terms[lm]
        li, lj = lm
        rem = dict(self._terms)
        quo = {}
        oterms = list(other._terms.items())
        while rem:
            mi, mj = max(rem, key=_grlex_key)
            if mi < li or mj < lj:
                return None
            c = rem[(mi, mj)] / lc
            qi, qj = mi - li, mj - lj
            quo[(qi, qj)] = c
            for (a, b), v in oterms:
                key = (a + qi, b + qj)
                nv = rem.get(key, 0) - c * v
                if nv:
                    rem[key] = nv
                else:
                    rem.pop(key, None)
        return Poly2._raw(quo)

    def divides(self, other: Poly2) -> bool:
        return other.divexact(self) is not None

    # -- calculus and substitution ---------------------------------------
    def diff_x(self) -> Poly2:
        return Poly2._raw({(i - 1, j): c * i for (i, j), c in self._terms.items() if i})

    def diff_y(self) -> Poly2:
        return Poly2._raw({(i, j - 1): c * j for (i, j), c in self._terms.items() if j})

    def __call__(self, xv, yv):
        """Evaluate at arbitrary ring elements supporting + and *."""
        by_x = {}
        for (i, j), c in self._terms.items():
            by_x.setdefault(i, {})[j] = c
        result = 0
        xpow = {}
        ypow = {}

        def _pow(cache, base, n):
            if n not in cache:
                cache[n] = base ** n if n else 1
            return cache[n]

        for i, row in by_x.items():
            inner = 0
            for j, c in row.items():
                inner = inner + c * _pow(ypow, yv, j)
            result = result + inner * _pow(xpow, xv, i)
        return result

    def compose(self, p, q):
        """Substitute polynomials (or rational functions) for x and y."""
        return self(p, q)

    def swap(self) -> Poly2:
        return Poly2._raw({(j, i): c for (i, j), c in self._terms.items()})

    # -- recursive views ---------------------------------------------------
    def as_y_poly(self) -> list:
        """Coefficients in Q[x] of powers of y: result[j] is a univariate x-poly."""
        dy = self.deg_y
        rows = [dict() for _ in range(dy + 1)]
        for (i, j), c in self._terms.items():
            rows[j][i] = c
        return [U.trim(row.get(i, 0) for i in range(max(row, default=-1) + 1)) for row in rows]

    @classmethod
    def from_y_rows(cls, rows) -> Poly2:
        terms = {}
        for j, up in enumerate(rows):
            for i, c in enumerate(up):
                if c:
                    terms[(i, j)] = Fraction(c)
        return cls._raw(terms)

    def as_x_poly(self) -> list:
        return self.swap().as_y_poly()

    # -- comparison, hashing, display ------------------------------------
    def __eq__(self, other):
        if isinstance(other, Poly2):
            return self._terms == other._terms
        if isinstance(other, (int, Rational)):
            return self._terms == Poly2.const(other)._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def sorted_terms(self):
        return sorted(self._terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def __str__(self):
        from ..expr import format_poly
        return format_poly(self)

    def __repr__(self):
        return f"Poly2({str(self)!r})"
