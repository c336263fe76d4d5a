from __future__ import annotations

import random
from types import SimpleNamespace
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from conftest import coefficients
from weblab.catalog import LATTES_F, PHI_TEXT, monomial_web, theoremE_iii, theoremE_iv
from weblab.errors import MapError, WebError
from weblab.exactalg import Poly2, RatFunc2
from weblab.expr import parse
from weblab.planemaps import (
    PlaneMap,
    algebraic_degree,
    check_image_web,
    family_action,
    is_invariant_web,
    jacobian,
    multiplicity_m,
    pullback,
    sampled_invariance,
)

X, Y = Poly2.x(), Poly2.y()
F = Fraction
SQUARE = "map(x^2, y^2)"


def P(text):
    return parse(text)


# -- jacobian --------------------------------------------------------------------


def test_jacobian_examples():
    assert jacobian(P(SQUARE)) == RatFunc2(4 * X * Y)
    assert jacobian(P("map(y, x)")) == RatFunc2(-1)


def test_jacobian_matches_finite_differences():
    phi = P("map(x^3/(1+x*y), y^3/(1+x*y))")
    jac = jacobian(phi)
    assert not jac.is_zero()
    rng = random.Random(3)
    h = 1e-6
    for _ in range(5):
        px, py = rng.uniform(0.2, 1.5), rng.uniform(0.2, 1.5)

        def f(a, b):
            return [float(v) for v in phi(F(a), F(b))]

        dx = [(u - v) / (2 * h) for u, v in zip(f(px + h, py), f(px - h, py))]
        dy = [(u - v) / (2 * h) for u, v in zip(f(px, py + h), f(px, py - h))]
        numeric = dx[0] * dy[1] - dy[0] * dx[1]
        assert float(jac(F(px), F(py))) == pytest.approx(numeric, rel=1e-5)


def test_non_dominant_maps_are_rejected():
    with pytest.raises(MapError, match="non-dominant map"):
        P("map(x + y, 2*x + 2*y)")
    with pytest.raises(MapError, match="non-dominant map"):
        P("map(x, 3)")


# -- pullback --------------------------------------------------------------------


def test_pullback_of_quotient_pair():
    res = pullback(P("map((x+y)^2, (x-y)^2)"), P("x*dy^2 - y*dx^2"))
    assert res.primitive in (P("dx*dy"), P("-dx*dy"))
    raw = res.raw()
    assert raw[1] == RatFunc2(-16 * (X + Y) ** 2 * (X - Y) ** 2)


def test_pullback_splits_content():
    res = pullback(P(SQUARE), P("y*dx + x*dy"))
    assert res.primitive == P("y*dx + x*dy")
    assert res.content == 2 * X * Y
    assert res.denominator == 1


def test_pullback_by_identity():
    w = P("x*dx^2 + y*dx*dy - dy^2")
    res = pullback(PlaneMap.identity(), w)
    assert res.primitive == w and res.content == 1


def test_pullback_clears_denominators():
    phi, w = theoremE_iii(3, 1, 1, [1])
    res = pullback(phi, w)
    # raw pullback = content / denominator * primitive, coefficientwise
    assert res.primitive.is_primitive
    for r, a in zip(res.raw(), res.primitive.coeffs):
        assert r * RatFunc2(res.denominator, res.content) == RatFunc2(a)


# -- multiplicities --------------------------------------------------------------


def test_multiplicity_equality_case():
    m = multiplicity_m(P(SQUARE), P("y*dx + x*dy"), X, image_curve=X)
    assert (m.m, m.bound) == (1, 1)
    assert m.equality and m.image_invariant and m.image_completely_invariant


def test_multiplicity_strict_inequality():
    m = multiplicity_m(P(SQUARE), P("dx*dy"), X)
    assert (m.m, m.bound) == (1, 2)
    assert m.holds and not m.equality


def test_multiplicity_zero_when_image_not_invariant():
    m = multiplicity_m(P(SQUARE), P("dx"), Y)
    assert m.m == 0 and not m.image_invariant


def test_contracted_curve():
    phi = P("map(x, x*y)")
    with pytest.raises(MapError, match="contracted curve"):
        multiplicity_m(phi, P("dx"), X)


# -- invariance ------------------------------------------------------------------


def test_invariance_examples():
    w = P("3*y*dx + x*dy")
    c = is_invariant_web(P(SQUARE), w)
    assert c is not None and c != 0
    assert sampled_invariance(P(SQUARE), w)
    assert is_invariant_web(P("map(y, x)"), P("dx")) is None
    phi = P("map(x^3/(1+x*y), y^3/(1+x*y))")
    w2 = P("y^2*dx^2 - x^2*dy^2")
    assert is_invariant_web(phi, w2) is not None
    assert sampled_invariance(phi, w2)


def test_invariance_needs_primitive_form():
    with pytest.raises(WebError):
        is_invariant_web(P(SQUARE), P("x*dx"))


def test_sampling_oracle_rejects_non_invariant_web():
    assert not sampled_invariance(P("map(y, x)"), P("dx"))
    assert not sampled_invariance(P(SQUARE), P("(x - y*x^2)*dy^2 + 2*x*y^2*dx*dy - y^3*dx^2"))


INVARIANT_PAIRS = [
    (lambda: (P(SQUARE), monomial_web([2, 3, 5]))),
    (lambda: theoremE_iii(3, 1, 1, [1])),
    (lambda: theoremE_iv(2, [1])),
    (lambda: (P("map(x^2 + 1, y^2 + 1)"), P("dx*dy"))),
]


@pytest.mark.parametrize("make", INVARIANT_PAIRS)
def test_invariance_is_iterable(make):
    phi, w = make()
    assert is_invariant_web(phi, w) is not None
    assert is_invariant_web(phi.after(phi), w) is not None


@pytest.mark.parametrize("make", INVARIANT_PAIRS)
def test_multiplicity_bound_on_invariant_pairs(make):
    from weblab.symforms import Divisor

    phi, w = make()
    res = pullback(phi, w)
    for h, _ in Divisor.of_poly(res.content):
        assert multiplicity_m(phi, w, h, pulled=res).holds


# -- degree ----------------------------------------------------------------------


def test_algebraic_degree_examples():
    info = algebraic_degree(P(SQUARE))
    assert (info.d, info.e, info.lam) == (2, 4, 2)
    assert info.entropy == "2·log(2)"
    assert algebraic_degree(P("map(x^3/(1+x*y), y^3/(1+x*y))")).d == 3
    assert algebraic_degree(P(PHI_TEXT)).d == 3


def test_maps_with_base_points_are_rejected():
    with pytest.raises(MapError, match="not an endomorphism"):
        algebraic_degree(P("map(x/y, y)"))
    with pytest.raises(MapError, match="not an endomorphism"):
        algebraic_degree(P("map(x^2, x*y)"))


# -- image webs -----------------------------------------------------------------


def test_check_image_web_examples():
    assert check_image_web(P("map((x+y)^2, (x-y)^2)"), P("x*dy^2 - y*dx^2"))
    assert check_image_web(PlaneMap.identity(), P("dx"))
    assert not check_image_web(PlaneMap.identity(), P("dy"))


def test_check_image_web_contracted_fibration():
    # such a map is not dominant, so it cannot be built as a PlaneMap
    fibred = SimpleNamespace(f1=RatFunc2(X), f2=RatFunc2(X * X + 1))
    with pytest.raises(MapError, match="contracted fibration"):
        check_image_web(fibred, P("dx"))


# -- families ------------------------------------------------------------------


def test_family_action_under_monomial_map():
    action = family_action(P(SQUARE), P("y*dx"), P("x*dy"))
    assert action is not None
    assert action.fixes_every_member
    assert action.describe() == "lambda -> lambda"


def test_family_action_swap():
    action = family_action(P("map(y, x)"), P("y*dx"), P("x*dy"))
    assert action.describe() == "lambda -> (1)/(lambda)"


def test_lattes_family_action():
    f = RatFunc2.of(P(LATTES_F))
    phi = PlaneMap(f, f.swap())
    w0 = P("y^3*(1+y)^4*dx^6")
    w1 = P("x^3*(1+x)^4*dy^6")
    action = family_action(phi, w0, w1)
    assert action.describe() == "lambda -> lambda"
    assert action.scale == (F(-1), F(0))


# -- composition and chain rule ---------------------------------------------------


small_polys = st.builds(
    lambda m, c: Poly2({m: c}),
    st.sampled_from([(2, 0), (1, 1), (0, 2)]), coefficients,
)


@st.composite
def plane_maps(draw):
    p, q = draw(small_polys), draw(small_polys)
    a = draw(st.integers(1, 3))
    try:
        return PlaneMap(X * a + p, Y + q)
    except MapError:
        assume(False)


@settings(max_examples=15)
@given(plane_maps(), plane_maps(), st.sampled_from(["y*dx - x*dy", "dx*dy", "x*dx^2 + dy^2"]))
def test_raw_pullbacks_compose(phi, psi, text):
    w = P(text)
    first = pullback(phi, w)
    outer = RatFunc2(first.content, first.denominator).compose(psi.f1, psi.f2)
    second = pullback(psi, first.primitive)
    lhs = [outer * r for r in second.raw()]
    rhs = pullback(phi.after(psi), w).raw()
    assert lhs == rhs


@given(plane_maps(), plane_maps())
def test_jacobian_chain_rule(phi, psi):
    comp = phi.after(psi)
    rng = random.Random(7)
    checked = 0
    while checked < 10:
        px, py = F(rng.randint(-9, 9), rng.randint(1, 9)), F(rng.randint(-9, 9), rng.randint(1, 9))
        try:
            inner = psi(px, py)
            lhs = comp.jacobian()(px, py)
            rhs = phi.jacobian()(*inner) * psi.jacobian()(px, py)
        except ZeroDivisionError:
            continue
        assert lhs == rhs
        checked += 1
