"""Exact arithmetic over Q: bivariate polynomials, rational functions, resultants."""

from fractions import Fraction as Rational

from .algorithms import (
    content_primitive,
    gcd,
    lcm,
    ord_along,
    resultant,
    squarefree_factors,
    squarefree_part,
    sylvester_matrix,
)
from .poly import Poly2
from .ratfunc import RatFunc2, compose_poly

X = Poly2.x()
Y = Poly2.y()

__all__ = [
    "Rational",
    "Poly2",
    "RatFunc2",
    "X",
    "Y",
    "compose_poly",
    "content_primitive",
    "gcd",
    "lcm",
    "ord_along",
    "resultant",
    "squarefree_factors",
    "squarefree_part",
    "sylvester_matrix",
]
