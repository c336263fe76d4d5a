from __future__ import annotations

from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from weblab.exactalg import Poly2
from weblab.symforms import SymForm

settings.register_profile(
    "weblab",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("weblab")

SX, SY = sp.symbols("x y")


def to_sympy(p: Poly2):
    return sum((sp.Rational(c.numerator, c.denominator) * SX**i * SY**j for (i, j), c in p.items()),
               sp.Integer(0))


def from_sympy(expr) -> Poly2:
    poly = sp.Poly(sp.expand(expr), SX, SY)
    return Poly2({m: Fraction(int(c.p), int(c.q)) for m, c in poly.terms()})


coefficients = st.integers(min_value=-10, max_value=10).map(Fraction)
nonzero_rationals = st.builds(
    Fraction,
    st.integers(min_value=-10, max_value=10).filter(bool),
    st.integers(min_value=1, max_value=10),
)


@st.composite
def polys(draw, max_degree=3, max_terms=5, nonzero=False):
    monos = [(i, d - i) for d in range(max_degree + 1) for i in range(d + 1)]
    picked = draw(st.lists(st.sampled_from(monos), min_size=1 if nonzero else 0,
                           max_size=max_terms, unique=True))
    terms = {m: draw(coefficients.filter(bool) if nonzero else coefficients) for m in picked}
    p = Poly2(terms)
    if nonzero and p.is_zero():
        p = Poly2.const(1)
    return p


@st.composite
def forms(draw, max_k=4, max_degree=3):
    k = draw(st.integers(min_value=1, max_value=max_k))
    coeffs = [draw(polys(max_degree=max_degree)) for _ in range(k + 1)]
    if all(c.is_zero() for c in coeffs):
        coeffs[draw(st.integers(0, k))] = draw(polys(max_degree=max_degree, nonzero=True))
    return SymForm(coeffs)


@pytest.fixture
def x():
    return Poly2.x()


@pytest.fixture
def y():
    return Poly2.y()


ACCEPTANCE: list = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for rec in sorted(ACCEPTANCE, key=lambda r: r.number):
        terminalreporter.write_line(rec.line())
