"""Exact and numerical computations with webs on the complex projective plane."""

from __future__ import annotations

from .catalog import CatalogEntry, Report, catalog, catalog_verify, theoremE_iii, theoremE_iv
from .errors import (
    AlgebraError,
    MapError,
    ParseError,
    SamplingError,
    TrackingError,
    WebError,
    WeblabError,
)
from .exactalg import Poly2, RatFunc2, Rational, gcd, resultant
from .expr import format_any, parse
from .monodromy import MonodromyResult, SheetSystem, branch_points_on_line, track_loop, web_monodromy
from .planemaps import (
    PlaneMap,
    algebraic_degree,
    check_image_web,
    family_action,
    is_invariant_web,
    jacobian,
    multiplicity_m,
    pullback,
)
from .symforms import Divisor, LineParam, SymForm, chart_change, discriminant, discriminant_divisor
from .ueda import symmetrize, ueda_endomorphism
from .webgeom import (
    WebOnP2,
    discriminant_degree_check,
    is_completely_invariant_curve,
    is_invariant_curve,
    tangency_divisor,
    verify_degree_bound,
    web_degree,
)

__version__ = "0.1.0"
