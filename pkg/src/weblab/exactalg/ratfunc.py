"""Reduced bivariate rational functions over Q."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from .algorithms import gcd
from .poly import Poly2


class RatFunc2:
    """A reduced fraction num/den with den monic in the grlex order."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, *, _reduced=False):
        num = num if isinstance(num, Poly2) else Poly2.const(num)
        if den is None:
            den = Poly2.const(1)
        elif not isinstance(den, Poly2):
            den = Poly2.const(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        # _reduced: caller guarantees gcd(num, den) = 1
        if num.is_zero():
            den = Poly2.const(1)
        elif not _reduced and not den.is_constant():
            g = gcd(num, den)
            if not g.is_constant():
                num = num.divexact(g)
                den = den.divexact(g)
        lc = den.leading_coeff()
        if lc != 1:
            num = num * (1 / lc)
            den = den * (1 / lc)
        self.num = num
        self.den = den

    @classmethod
    def of(cls, value) -> RatFunc2:
        if isinstance(value, RatFunc2):
            return value
        return cls(value)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def is_constant(self) -> bool:
        return self.den.is_constant() and self.num.is_constant()

    def as_poly(self) -> Poly2:
        if not self.den.is_constant():
            raise ValueError("rational function is not a polynomial")
        return self.num * (1 / self.den.constant_value())

    @staticmethod
    def _coerce(other):
        if isinstance(other, RatFunc2):
            return other
        if isinstance(other, (Poly2, int, Rational)):
            return RatFunc2(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return RatFunc2(self.num + other.num, self.den)
        return RatFunc2(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc2(-self.num, self.den, _reduced=True)

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
            return RatFunc2(self.num * other, self.den, _reduced=True)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        # cross-cancel before multiplying
        g1 = gcd(self.num, other.den)
        g2 = gcd(other.num, self.den)
        n = self.num.divexact(g1) * other.num.divexact(g2)
        d = self.den.divexact(g2) * other.den.divexact(g1)
        return RatFunc2(n, d, _reduced=True)

    __rmul__ = __mul__

    def inverse(self) -> RatFunc2:
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of the zero rational function")
        return RatFunc2(self.den, self.num, _reduced=True)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc2(self.num ** n, self.den ** n, _reduced=True)

    def diff_x(self) -> RatFunc2:
        return RatFunc2(self.num.diff_x() * self.den - self.num * self.den.diff_x(), self.den * self.den)

    def diff_y(self) -> RatFunc2:
        return RatFunc2(self.num.diff_y() * self.den - self.num * self.den.diff_y(), self.den * self.den)

    def __call__(self, xv, yv):
        return self.num(xv, yv) / self.den(xv, yv)

    def compose(self, f, g) -> RatFunc2:
        """Substitute rational functions f, g for x, y."""
        f, g = RatFunc2.of(f), RatFunc2.of(g)
        return compose_poly(self.num, f, g) / compose_poly(self.den, f, g)

    def swap(self) -> RatFunc2:
        return RatFunc2(self.num.swap(), self.den.swap())

    def __eq__(self, other):
        if isinstance(other, RatFunc2):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (Poly2, int, Rational)):
            return self == RatFunc2(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __str__(self):
        from ..expr import format_ratfunc
        return format_ratfunc(self)

    def __repr__(self):
        return f"RatFunc2({str(self)!r})"


def compose_poly(p: Poly2, f: RatFunc2, g: RatFunc2) -> RatFunc2:
    """p(f, g) computed over the common denominator den(f)^a den(g)^b."""
    f, g = RatFunc2.of(f), RatFunc2.of(g)
    if p.is_zero():
        return RatFunc2(0)
    a, b = p.deg_x, p.deg_y
    fn, fd, gn, gd = f.num, f.den, g.num, g.den
    fnp = [fn ** i for i in range(a + 1)]
    fdp = [fd ** i for i in range(a + 1)]
    gnp = [gn ** j for j in range(b + 1)]
    gdp = [gd ** j for j in range(b + 1)]
    num = Poly2.const(0)
    for (i, j), c in p.items():
        num = num + fnp[i] * fdp[a - i] * gnp[j] * gdp[b - j] * c
    return RatFunc2(num, fdp[a] * gdp[b])
