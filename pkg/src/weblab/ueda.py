"""Symmetric functions in elementary symmetric coordinates, and Ueda maps.

A symmetric rational function F(x, y) is rewritten as G(s, p) with
s = x + y and p = x y; the result uses ``x`` for s and ``y`` for p.
"""

from __future__ import annotations

from .errors import AlgebraError, MapError
from .exactalg import Poly2, RatFunc2
from .planemaps import PlaneMap

S = Poly2.x()
P = Poly2.y()


def symmetrize_poly(f: Poly2) -> Poly2:
    """Leading-term reduction of a symmetric polynomial."""
    if f.swap() != f:
        raise AlgebraError("polynomial is not symmetric")
    out = Poly2.const(0)
    rest = f
    while not rest.is_zero():
        (a, b), c = rest.leading_monomial(), rest.leading_coeff()
        # the grlex leading term of a symmetric polynomial has a >= b
        out = out + Poly2.monomial(a - b, b, c)
        e1 = Poly2.x() + Poly2.y()
        e2 = Poly2.x() * Poly2.y()
        rest = rest - (e1 ** (a - b)) * (e2 ** b) * c
    return out


def symmetrize(F) -> RatFunc2:
    """G with G(x + y, x y) = F(x, y), for F invariant under swapping x and y."""
    F = RatFunc2.of(F)
    if F.swap() != F:
        raise AlgebraError("rational function is not symmetric")
    num, den = F.num, F.den
    if den.swap() != den:
        # numerator and denominator are both antisymmetric
        anti = Poly2.x() - Poly2.y()
        num, den = num * anti, den * anti
    return RatFunc2(symmetrize_poly(num), symmetrize_poly(den))


def _one_variable(psi) -> RatFunc2:
    psi = RatFunc2.of(psi)
    if psi.num.deg_y > 0 or psi.den.deg_y > 0:
        raise MapError("a one-variable map must not involve y")
    if psi.is_constant():
        raise MapError("constant map")
    return psi


def ueda_endomorphism(psi) -> PlaneMap:
    """The plane map induced by (psi, psi) on the quotient of P^1 x P^1 by the swap."""
    psi = _one_variable(psi)
    x, y = RatFunc2(Poly2.x()), RatFunc2(Poly2.y())
    u = psi.compose(x, x)
    v = psi.compose(y, y)
    return PlaneMap(symmetrize(u + v), symmetrize(u * v))


def ueda_degree(psi) -> int:
    psi = _one_variable(psi)
    return max(psi.num.degree, psi.den.degree)
