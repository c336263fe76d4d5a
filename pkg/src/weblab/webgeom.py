"""Web geometry on the projective plane: degree, invariant curves, degree bounds."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import SamplingError, WebError
from .exactalg import Poly2, ord_along
from .exactalg import univariate as U
from .planemaps import PlaneMap, algebraic_degree, is_invariant_web, multiplicity_m, pullback
from .symforms import (
    Divisor,
    LineParam,
    SymForm,
    _binary_pow,
    chart_change,
    discriminant,
    restrict_to_line,
)


@dataclass(frozen=True)
class WebOnP2:
    """A web on P^2 seen in the charts (x, y) and (u, v) = (1/x, y/x)."""

    chart1: SymForm
    chart2: SymForm
    infinity_multiplicity: int

    @classmethod
    def from_form(cls, w: SymForm) -> WebOnP2:
        _, prim = w.primitive()
        other, m = chart_change(prim)
        return cls(prim, other, m)

    @property
    def k(self) -> int:
        return self.chart1.k

    def exact_degree(self) -> int:
        """Degree from the chart transition: N W = O(m) so deg W = m - 2k."""
        return self.infinity_multiplicity - 2 * self.k


def _random_line(rng) -> LineParam:
    def q():
        return Fraction(rng.randint(-97, 97), rng.randint(1, 97))

    while True:
        a, b, c, d = q(), q(), q(), q()
        if b != 0 and d != 0:
            return LineParam(a, b, c, d)


def _tangencies_on_line(W: WebOnP2, line: LineParam) -> int:
    affine = restrict_to_line(W.chart1, line)
    # the same line in the chart (u, v): v = d/b - ((d a - b c)/b) u
    far = LineParam(0, 1, line.d / line.b, -(line.d * line.a - line.b * line.c) / line.b)
    at_infinity = restrict_to_line(W.chart2, far)
    return U.degree(affine) + U.order_at_zero(at_infinity)


def web_degree(W: WebOnP2, seed: int = 0, rounds: int = 5) -> int:
    """Number of tangencies with a generic line, agreed on by three random lines."""
    rng = random.Random(seed)
    for _ in range(rounds):
        counts = []
        for _ in range(3):
            try:
                counts.append(_tangencies_on_line(W, _random_line(rng)))
            except WebError:
                counts.append(None)
        if None not in counts and len(set(counts)) == 1:
            return counts[0]
    raise SamplingError("degenerate sampling")


def normal_bundle_degree(W: WebOnP2, seed: int = 0) -> int:
    return web_degree(W, seed) + 2 * W.k


@dataclass(frozen=True)
class DegreeCheck:
    computed: int
    predicted: int
    affine_degree: int
    at_infinity: int

    @property
    def passed(self) -> bool:
        return self.computed == self.predicted


def discriminant_degree_check(W: WebOnP2, seed: int = 0) -> DegreeCheck:
    """Compare deg(Delta(W)) on P^2 with (k-1)(2 deg(W) + k)."""
    k = W.k
    if k < 2:
        raise WebError("discriminant needs k >= 2")
    d1 = discriminant(W.chart1)
    d2 = discriminant(W.chart2)
    if d1.is_zero() or d2.is_zero():
        raise WebError("non-reduced web")
    inf = ord_along(Poly2.x(), d2)
    computed = d1.degree + inf
    predicted = (k - 1) * (2 * web_degree(W, seed) + k)
    return DegreeCheck(computed, predicted, d1.degree, inf)


def is_invariant_curve(h: Poly2, w: SymForm) -> bool:
    """The tangent direction (h_y, -h_x) of {h = 0} is a null direction of w."""
    if h.is_constant():
        raise WebError("curve polynomial must be nonconstant")
    return h.divides(w.evaluate(h.diff_y(), -h.diff_x()))


class DegenerateCurve(WebError):
    """The form vanishes identically along the curve."""


def is_completely_invariant_curve(h: Poly2, w: SymForm) -> bool:
    """w restricted to {h = 0} is proportional to (h_x dx + h_y dy)^k."""
    if h.is_constant():
        raise WebError("curve polynomial must be nonconstant")
    if all(h.divides(a) for a in w.coeffs):
        raise DegenerateCurve("form vanishes identically along the curve")
    power = _binary_pow([h.diff_y(), h.diff_x()], w.k)
    a = w.coeffs
    for i in range(w.k + 1):
        for j in range(i + 1, w.k + 1):
            if not h.divides(a[i] * power[j] - a[j] * power[i]):
                return False
    return True


def tangency_divisor(w1: SymForm, w2: SymForm) -> Divisor:
    """Divisor of a e - b c for w1 = a dx + b dy and w2 = c dx + e dy."""
    if w1.k != 1 or w2.k != 1:
        raise WebError("tangency divisors are defined for foliations")
    b, a = w1.coeffs
    e, c = w2.coeffs
    det = a * e - b * c
    if det.is_zero():
        raise WebError("identical foliations")
    return Divisor.of_poly(det)


@dataclass(frozen=True)
class DegreeBound:
    deg: int
    k: int
    passed: bool
    equality: bool
    factors: dict = field(default_factory=dict)

    @property
    def equality_consistent(self) -> bool:
        """In the equality case every content factor has m = k ord."""
        if not self.equality:
            return True
        return all(m.m == m.bound for m in self.factors.values())


def verify_degree_bound(phi: PlaneMap, W: WebOnP2, factors=None, seed: int = 0) -> DegreeBound:
    """deg(W) <= k for a web invariant by an endomorphism of degree >= 2."""
    if algebraic_degree(phi).d < 2:
        raise WebError("the degree bound needs an endomorphism of degree >= 2")
    if is_invariant_web(phi, W.chart1) is None:
        raise WebError("web is not invariant by the map")
    deg = web_degree(W, seed)
    k = W.k
    res = pullback(phi, W.chart1)
    comps = Divisor.of_poly(res.content)
    if factors:
        comps = comps.refine(factors)
    mults = {str(h): multiplicity_m(phi, W.chart1, h, pulled=res) for h, _ in comps}
    return DegreeBound(deg, k, deg <= k, deg == k, mults)

