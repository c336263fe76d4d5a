from __future__ import annotations

import random
import time
from fractions import Fraction

import numpy as np
import pytest
import sympy as sp
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from conftest import SX, SY, coefficients, to_sympy
from weblab.catalog import DUAL_CONIC, DUAL_WEB, monomial_web, theoremE_iii
from weblab.errors import SamplingError, WebError
from weblab.exactalg import Poly2
from weblab.expr import parse
from weblab.monodromy import (
    DirectionPolynomial,
    SheetSystem,
    branch_points_on_line,
    compose,
    cycle_notation,
    group_order,
    identity,
    inverse,
    orbits_of,
    plan_loops,
    track_loop,
    web_monodromy,
)
from weblab.symforms import LineParam, SymForm, directions_at

X, Y = Poly2.x(), Poly2.y()
F = Fraction
GENERIC = LineParam(F(1, 3), F(2), F(-2, 7), F(5, 4))


# -- permutations -------------------------------------------------------------


def test_permutation_helpers():
    p, q = (1, 2, 0), (1, 0, 2)
    assert compose(p, inverse(p)) == identity(3)
    assert compose(p, q) == (0, 2, 1)
    assert orbits_of([q], 3) == [[0, 1], [2]]
    assert group_order([p, q], 3) == 6
    assert group_order([], 3) == 1
    assert cycle_notation(p) == "(1 2 3)"
    assert cycle_notation(identity(2)) == "()"


# -- branch points ------------------------------------------------------------


AXIS = LineParam(0, 1, 0, 0)  # t -> (t, 0)


def test_branch_points_examples():
    # the line (t, 0) meets the conic x^2 = 4y only at t = 0
    bps = branch_points_on_line(parse(DUAL_CONIC), AXIS)
    assert len(bps) == 1 and abs(bps[0]) < 1e-8
    assert branch_points_on_line(parse("dx*dy"), GENERIC) == []
    bps = branch_points_on_line(parse("y^2*dx^2 - x^2*dy^2"), LineParam(0, 1, 1, 0))
    assert len(bps) == 1 and abs(bps[0]) < 1e-8


def test_branch_points_on_generic_line():
    bps = branch_points_on_line(parse(DUAL_WEB), GENERIC)
    # x y^3 restricted to a generic line has two distinct roots
    assert len(bps) == 2


def test_non_generic_line():
    # y*dx^2 - x*dy^2 has discriminant 4xy, which vanishes on the axis y = 0
    with pytest.raises(SamplingError, match="non-generic line"):
        branch_points_on_line(parse("y*dx^2 - x*dy^2"), AXIS)


# -- loops --------------------------------------------------------------------


def _system(w, line, seed=0):
    rng = random.Random(seed)
    F_ = DirectionPolynomial(w, line)
    plan = plan_loops(branch_points_on_line(w, line), rng)
    return F_, plan, SheetSystem(plan.base_point, F_.roots(plan.base_point, rng))


def test_small_loop_around_conic_branch_point_is_a_transposition():
    w = parse(DUAL_CONIC)
    F_, plan, system = _system(w, GENERIC)
    assert len(plan.loops) == 2
    for loop in plan.loops:
        assert track_loop(F_, system, loop) == (1, 0)


@pytest.mark.parametrize("text", ["dx*dy", "dx*dy*(dx + dy)"])
def test_loops_for_parallel_webs_are_trivial(text):
    w = parse(text)
    F_ = DirectionPolynomial(w, GENERIC)
    rng = random.Random(2)
    base = 0.3 + 0.1j
    system = SheetSystem(base, F_.roots(base, rng))
    loop = [base, base + 1, base + 1 + 1j, base + 1j, base]
    assert track_loop(F_, system, loop) == identity(w.k)


def test_loop_must_be_closed():
    w = parse(DUAL_CONIC)
    F_, plan, system = _system(w, GENERIC)
    with pytest.raises(WebError):
        track_loop(F_, system, [plan.base_point, plan.base_point + 1])


def test_colliding_sheets_are_rejected():
    w = parse("dx^2 - x*dy^2")
    F_ = DirectionPolynomial(w, LineParam(0, 1, 1, 0))
    with pytest.raises(SamplingError):
        SheetSystem(0j, F_.roots(0j))


# -- web monodromy -------------------------------------------------------------


@pytest.mark.parametrize(
    "text, transitive, sizes, order",
    [(DUAL_CONIC, True, [2], 2), ("y^2*dx^2 - x^2*dy^2", False, [1, 1], 1),
     ("dx*dy*(dx + dy)", False, [1, 1, 1], 1)],
)
def test_web_monodromy_examples(text, transitive, sizes, order):
    start = time.perf_counter()
    result = web_monodromy(parse(text), seed=1)
    assert time.perf_counter() - start < 5
    assert result.transitive is transitive
    assert sorted(len(o) for o in result.orbits) == sizes
    assert result.group_order == order
    assert result.label == "numerical"
    assert result.flags == []


def test_web_monodromy_is_seed_reproducible():
    w = parse(DUAL_WEB)
    assert web_monodromy(w, seed=4).summary() == web_monodromy(w, seed=4).summary()


def test_web_monodromy_rejects_non_reduced_web():
    with pytest.raises(WebError):
        web_monodromy(parse("(dx + x*dy)^2"))


def test_foliation_monodromy_is_trivial():
    result = web_monodromy(parse("y*dx - x*dy"))
    assert result.transitive and result.group_order == 1


MONODROMY_WEBS = [DUAL_CONIC, DUAL_WEB, "y^2*dx^2 - x^2*dy^2", "dx*dy*(dx + dy)",
                  "x*dx^3 + y*dy^3 + dx*dy^2", "(y*dx - x*dy)*(dx^2 - x*dy^2)"]


@pytest.mark.parametrize("text", MONODROMY_WEBS)
def test_loop_composition_matches_loop_at_infinity(text):
    result = web_monodromy(parse(text), seed=3)
    assert compose(result.product_of_generators, result.infinity_permutation) == identity(parse(text).k)
    assert result.product_of_generators == inverse(result.infinity_permutation)


@pytest.mark.parametrize("text", MONODROMY_WEBS)
def test_resampling_stability(text):
    a = web_monodromy(parse(text), seed=11)
    b = web_monodromy(parse(text), seed=12)
    assert a.line != b.line
    assert sorted(map(len, a.orbits)) == sorted(map(len, b.orbits))
    assert a.group_order == b.group_order


def _factors_exactly(w: SymForm) -> bool:
    m = sp.Symbol("m")
    poly = sum(to_sympy(a) * m ** (w.k - i) for i, a in enumerate(w.coeffs))
    _, factors = sp.factor_list(poly, m, SX, SY)
    return any(0 < sp.degree(f, m) < w.k or (sp.degree(f, m) == w.k and e > 1) for f, e in factors) or \
        sp.degree(poly, m) < w.k


linear = st.builds(lambda a, b, c: a + X * b + Y * c, coefficients, coefficients, coefficients)


@st.composite
def small_webs(draw):
    k = draw(st.integers(2, 3))
    coeffs = [draw(linear) for _ in range(k + 1)]
    assume(not any(c.is_zero() for c in (coeffs[0], coeffs[-1])))
    return SymForm(coeffs)


@settings(max_examples=12)
@given(small_webs())
def test_exactly_factoring_webs_are_never_transitive(w):
    from weblab.symforms import discriminant

    assume(not discriminant(w).is_zero())
    result = web_monodromy(w, seed=5)
    if _factors_exactly(w):
        assert not result.transitive


@pytest.mark.parametrize("w", [monomial_web([2, 3, 5]), theoremE_iii(3, 1, 1, [1])[1]])
def test_catalog_products_are_not_transitive(w):
    assert _factors_exactly(w)
    assert not web_monodromy(w).transitive


def test_slopes_reproduce_exact_directions():
    for text in [DUAL_CONIC, DUAL_WEB, "x*dx^3 + y*dy^3 + dx*dy^2"]:
        w = parse(text)
        t0 = F(3, 7)
        system = SheetSystem(complex(t0), DirectionPolynomial(w, GENERIC).roots(complex(t0)))
        vals = directions_at(w, GENERIC.point(t0))
        # sum a_i u^i v^(k-i) with slope m = v/u: coefficient of m^(k-i) is a_i
        expected = np.roots([float(a) for a in vals])
        got = system.slopes
        assert len(got) == w.k
        for m in expected:
            assert min(abs(m - s) for s in got) < 1e-8 * max(1, abs(m))
