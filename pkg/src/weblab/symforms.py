"""Symmetric k-forms sum a_i dx^i dy^(k-i) with polynomial coefficients."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .errors import AlgebraError, WebError
from .exactalg import Poly2, RatFunc2, content_primitive, resultant, squarefree_factors
from .exactalg import univariate as U


class SymForm:
    """A web in an affine chart, stored as coefficients a_0..a_k.

    ``coeffs[i]`` multiplies ``dx^i dy^(k-i)``.
    """

    __slots__ = ("coeffs", "_primitive")

    def __init__(self, coeffs):
        coeffs = tuple(c if isinstance(c, Poly2) else Poly2.const(c) for c in coeffs)
        if len(coeffs) < 2:
            raise WebError("a symmetric form needs order k >= 1")
        if all(c.is_zero() for c in coeffs):
            raise AlgebraError("zero form")
        self.coeffs = coeffs
        self._primitive = None

    @property
    def k(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def one_form(cls, a, b) -> SymForm:
        """The 1-form a dx + b dy."""
        return cls([b, a])

    @property
    def is_primitive(self) -> bool:
        if self._primitive is None:
            content, _ = content_primitive(self.coeffs)
            self._primitive = content.is_constant()
        return self._primitive

    def primitive(self) -> tuple[Poly2, SymForm]:
        content, prims = content_primitive(self.coeffs)
        form = SymForm(prims)
        form._primitive = True
        return content, form

    def scale(self, c) -> SymForm:
        return SymForm([a * c for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, SymForm):
            return superpose(self, other)
        return self.scale(other)

    __rmul__ = scale

    def __add__(self, other: SymForm) -> SymForm:
        if other.k != self.k:
            raise WebError("mixed form orders")
        return SymForm([a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def evaluate(self, u, v, *, at=None):
        """omega(u, v) with polynomial coefficients, or numbers at a point."""
        total = 0
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            av = a if at is None else a(*at)
            total = total + av * (u ** i) * (v ** (self.k - i))
        return total

    def linear_substitute(self, m11, m12, m21, m22) -> SymForm:
        """Substitute dx -> m11 dx + m12 dy, dy -> m21 dx + m22 dy."""
        return _substitute(self.coeffs, (Poly2.const(m12), Poly2.const(m11)),
                           (Poly2.const(m22), Poly2.const(m21)))

    def __eq__(self, other):
        return isinstance(other, SymForm) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __str__(self):
        from .expr import format_form
        return format_form(self)

    def __repr__(self):
        return f"SymForm({str(self)!r})"


def _binary_mul(p, q):
    """Product of binary forms given as coefficient lists (index = dx power)."""
    out = [Poly2.const(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a.is_zero():
            continue
        for j, b in enumerate(q):
            if b.is_zero():
                continue
            out[i + j] = out[i + j] + a * b
    return out


def _binary_pow(lin, n):
    out = [Poly2.const(1)]
    for _ in range(n):
        out = _binary_mul(out, lin)
    return out


def _substitute(coeffs, dx_image, dy_image):
    """Replace dx and dy by 1-forms given as [dy-coeff, dx-coeff] lists."""
    k = len(coeffs) - 1
    total = [Poly2.const(0)] * (k + 1)
    dxp = [_binary_pow(dx_image, i) for i in range(k + 1)]
    dyp = [_binary_pow(dy_image, i) for i in range(k + 1)]
    for i, a in enumerate(coeffs):
        if a.is_zero():
            continue
        term = _binary_mul(dxp[i], dyp[k - i])
        for n, t in enumerate(term):
            if not t.is_zero():
                total[n] = total[n] + a * t
    return SymForm(total)


def superpose(w1: SymForm, w2: SymForm) -> SymForm:
    """Superposition: the product of the defining forms (not primitivised)."""
    return SymForm(_binary_mul(list(w1.coeffs), list(w2.coeffs)))


def d_dx(w: SymForm):
    """Derivative with respect to dx; returns a form of order k-1, or a Poly2 when k = 1."""
    coeffs = [w.coeffs[i] * i for i in range(1, w.k + 1)]
    if w.k == 1:
        return coeffs[0]
    if all(c.is_zero() for c in coeffs):
        raise AlgebraError("zero form")
    return SymForm(coeffs)


def _shear(coeffs, c):
    """Coefficients after dy -> dy + c dx (determinant one)."""
    k = len(coeffs) - 1
    out = [Poly2.const(0)] * (k + 1)
    for i, a in enumerate(coeffs):
        if a.is_zero():
            continue
        # a dx^i (dy + c dx)^(k-i)
        for r in range(k - i + 1):
            w = comb(k - i, r) * Fraction(c) ** r
            if w:
                out[i + r] = out[i + r] + a * w
    return out


def discriminant(w: SymForm) -> Poly2:
    """R[omega, d_dx omega] / (k^k a_k), with a unimodular shear when a_k = 0."""
    k = w.k
    if k < 2:
        raise WebError("discriminant needs k >= 2")
    coeffs = list(w.coeffs)
    if coeffs[k].is_zero():
        for c in range(1, k + 1):
            sheared = _shear(coeffs, c)
            if not sheared[k].is_zero():
                coeffs = sheared
                break
        else:
            raise AssertionError("a nonzero binary form cannot vanish at k+1 points")
    deriv = [coeffs[i] * i for i in range(1, k + 1)]
    res = resultant(coeffs, deriv)
    q = res.divexact(coeffs[k] * (k ** k))
    assert q is not None, "the resultant is divisible by k^k a_k"
    return q


class Divisor:
    """Finite formal sum of curves {h: multiplicity}."""

    __slots__ = ("components",)

    def __init__(self, components=None):
        comps = {}
        for h, m in (components.items() if isinstance(components, dict) else components or ()):
            if m == 0:
                continue
            if h.is_constant():
                continue
            h = h.monic()
            comps[h] = comps.get(h, 0) + m
            if comps[h] == 0:
                del comps[h]
        self.components = comps

    @classmethod
    def of_poly(cls, p: Poly2) -> Divisor:
        return cls(squarefree_factors(p))

    def __getitem__(self, h):
        return self.components.get(h.monic(), 0)

    def __contains__(self, h):
        return h.monic() in self.components

    def __len__(self):
        return len(self.components)

    def __iter__(self):
        return iter(self.components.items())

    def degree(self) -> int:
        return sum(h.degree * m for h, m in self.components.items())

    def support(self):
        return list(self.components)

    def __add__(self, other: Divisor) -> Divisor:
        out = dict(self.components)
        for h, m in other.components.items():
            out[h] = out.get(h, 0) + m
        return Divisor(out)

    def __rmul__(self, n: int) -> Divisor:
        return Divisor({h: n * m for h, m in self.components.items()})

    def refine(self, factors) -> Divisor:
        """Split components by known irreducible factors."""
        out = {}
        for h, m in self.components.items():
            rest = h
            for f in factors:
                if f.is_constant():
                    continue
                q = rest.divexact(f)
                if q is not None:
                    out[f.monic()] = out.get(f.monic(), 0) + m
                    rest = q
            if not rest.is_constant():
                out[rest.monic()] = out.get(rest.monic(), 0) + m
        return Divisor(out)

    def __eq__(self, other):
        if isinstance(other, dict):
            other = Divisor(other)
        return isinstance(other, Divisor) and self.components == other.components

    def __hash__(self):
        return hash(frozenset(self.components.items()))

    def as_dict(self) -> dict:
        return {str(h): m for h, m in sorted(self.components.items(), key=lambda t: str(t[0]))}

    def __repr__(self):
        return f"Divisor({self.as_dict()})"


def discriminant_divisor(w: SymForm) -> Divisor:
    delta = discriminant(w)
    if delta.is_zero():
        raise WebError("non-reduced web")
    return Divisor.of_poly(delta)


@dataclass(frozen=True)
class LineParam:
    """The affine line t -> (a + b t, c + d t)."""

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    def __post_init__(self):
        for name in "abcd":
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.b == 0 and self.d == 0:
            raise WebError("degenerate line: direction (b, d) is zero")

    def point(self, t):
        return (self.a + self.b * t, self.c + self.d * t)

    def restrict_poly(self, p: Poly2):
        """p(a + b t, c + d t) as a univariate polynomial in t."""
        result = U.ZERO
        xs = U.trim((self.a, self.b))
        ys = U.trim((self.c, self.d))
        xp = [U.ONE]
        yp = [U.ONE]
        for _ in range(p.deg_x):
            xp.append(U.mul(xp[-1], xs))
        for _ in range(p.deg_y):
            yp.append(U.mul(yp[-1], ys))
        for (i, j), c in p.items():
            result = U.add(result, U.scale(U.mul(xp[i], yp[j]), c))
        return result


def restrict_to_line(w: SymForm, line: LineParam):
    """Coefficient of dt^k in the pullback of w to the line, as a t-polynomial."""
    total = U.ZERO
    for i, a in enumerate(w.coeffs):
        if a.is_zero():
            continue
        weight = line.b ** i * line.d ** (w.k - i)
        if weight:
            total = U.add(total, U.scale(line.restrict_poly(a), weight))
    if not total:
        raise WebError("line inside zero locus")
    return total


def directions_at(w: SymForm, point):
    """Binary form sum a_i(p) u^i v^(k-i) at a rational point, as (a_0(p), ..., a_k(p))."""
    px, py = (Fraction(v) for v in point)
    vals = tuple(a(px, py) if not a.is_zero() else Fraction(0) for a in w.coeffs)
    if all(v == 0 for v in vals):
        raise WebError("singular point of W")
    return tuple(Fraction(v) for v in vals)


def chart_change(w: SymForm) -> tuple[SymForm, int]:
    """Rewrite w in the chart (u, v) = (1/x, y/x).

    Returns ``(form, m)`` where the substituted form equals
    ``u**(-m) * form`` up to a constant and ``form`` is primitive. Applying it
    twice returns the original primitive form up to a constant.
    """
    k = w.k
    deg = max(a.degree for a in w.coeffs if not a.is_zero())
    u = Poly2.x()
    v = Poly2.y()
    # a(1/u, v/u) * u^deg is a polynomial
    lifted = []
    for a in w.coeffs:
        t = Poly2.const(0)
        for (i, j), c in a.items():
            t = t + Poly2.monomial(deg - i - j, j, c)
        lifted.append(t)
    # dx -> -du, dy -> u dv - v du after multiplying by u^2 each
    dx_image = [Poly2.const(0), Poly2.const(-1)]
    dy_image = [u, -v]
    raw = _substitute(lifted, dx_image, dy_image)
    # raw = u^(deg + 2k) * substituted form
    content, prims = content_primitive(raw.coeffs)
    from .exactalg import ord_along
    e = ord_along(u, content)
    form = SymForm(prims)
    form._primitive = True
    return form, deg + 2 * k - e


def form_from_ratfuncs(coeffs) -> tuple[SymForm, Poly2]:
    """Clear denominators of rational coefficients: returns (form, common denominator)."""
    from .exactalg import lcm

    coeffs = [RatFunc2.of(c) for c in coeffs]
    den = Poly2.const(1)
    for c in coeffs:
        if not c.is_polynomial():
            den = lcm(den, c.den)
    polys = [(c * den).as_poly() for c in coeffs]
    return SymForm(polys), den
