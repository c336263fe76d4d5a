"""A fixed manifest of explicit maps and webs, with expected outcomes.

Every entry carries named checks. A check runs one operation of the library
and compares the result against the expected outcome; its provenance is one
of ``PAPER`` (a value stated in the source), ``TRIVIAL`` or ``DERIVED``
(computed independently).
"""

from __future__ import annotations

import json
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cache
from math import gcd as int_gcd
from typing import Callable

from .errors import MapError, WeblabError
from .exactalg import Poly2, RatFunc2
from .expr import format_any, parse
from .monodromy import web_monodromy
from .planemaps import (
    PlaneMap,
    algebraic_degree,
    check_image_web,
    family_action,
    is_invariant_web,
    proportionality,
    pullback,
    sampled_invariance,
)
from .symforms import SymForm, discriminant_divisor
from .ueda import ueda_endomorphism
from .webgeom import (
    WebOnP2,
    discriminant_degree_check,
    is_invariant_curve,
    verify_degree_bound,
    web_degree,
)

log = logging.getLogger(__name__)

PROVENANCE = ("PAPER", "TRIVIAL", "DERIVED")

X = Poly2.x()
Y = Poly2.y()


@dataclass
class Check:
    name: str
    operation: str
    expected: object
    provenance: str
    run: Callable[[int], tuple[bool, object]]

    def __post_init__(self):
        if self.provenance not in PROVENANCE:
            raise ValueError(f"unknown provenance {self.provenance!r}")


@dataclass
class CatalogEntry:
    name: str
    title: str
    web: WebOnP2 | None
    map: PlaneMap | None = None
    checks: list[Check] = field(default_factory=list)


# -- constructors --------------------------------------------------------------


def _one_form(a, b) -> SymForm:
    return SymForm.one_form(a, b)


def theoremE_iii(d: int, p: int, q: int, cs) -> tuple[PlaneMap, SymForm]:
    """Map (x^d/R, y^d/R) with R = prod(1 + c x^p y^q) and web [y dx - x dy][p y dx + q x dy]."""
    cs = [Fraction(c) for c in cs]
    if p < 1 or q < 1 or int_gcd(p, q) != 1:
        raise MapError("p and q must be coprime positive integers")
    if not cs or any(c == 0 for c in cs):
        raise MapError("the constants c_i must be nonzero")
    if len(cs) * (p + q) > d:
        raise MapError(f"l(p + q) = {len(cs) * (p + q)} exceeds d = {d}")
    R = Poly2.const(1)
    for c in cs:
        R = R * (1 + Poly2.monomial(p, q, c))
    phi = PlaneMap(RatFunc2(X ** d, R), RatFunc2(Y ** d, R))
    web = _one_form(Y, -X) * _one_form(Y * p, X * q)
    return phi, web


def theoremE_iv(d: int, cs) -> tuple[PlaneMap, SymForm]:
    """Map (y^d/R, x^d/R) with R = prod(1 + c x y) and web [y dx - x dy][y dx + x dy]."""
    cs = [Fraction(c) for c in cs]
    if not cs or any(c == 0 for c in cs):
        raise MapError("the constants c_i must be nonzero")
    if 2 * len(cs) > d:
        raise MapError(f"2l = {2 * len(cs)} exceeds d = {d}")
    R = Poly2.const(1)
    for c in cs:
        R = R * (1 + X * Y * c)
    phi = PlaneMap(RatFunc2(Y ** d, R), RatFunc2(X ** d, R))
    web = _one_form(Y, -X) * _one_form(Y, X)
    return phi, web


def monomial_web(lams) -> SymForm:
    """Superposition of the foliations lambda y dx + x dy."""
    form = None
    for lam in lams:
        f = _one_form(Y * Fraction(lam), X)
        form = f if form is None else form * f
    return form


DUAL_CONIC = "y*dx^2 - x*dx*dy + dy^2"
DUAL_WEB = "(x - y*x^2)*dy^2 + 2*x*y^2*dx*dy - y^3*dx^2"
LATTES_F = "-(x/27)*((x+9)/(x+1))^2"
PHI_TEXT = ("map(-(y^2*x + 14*y^2 + 126*y + 113*x*y + 81*x + 18*x^2 + x^3 + 2*y*x^2)"
            "/(27*(x+y+1)^2), (y/729)*((9*x+y+81)/(x+y+1))^2)")


# -- check builders ----------------------------------------------------------


def _invariance(phi, w, expect=True, provenance="PAPER") -> Check:
    def run(seed):
        c = is_invariant_web(phi, w)
        oracle = sampled_invariance(phi, w, seed=seed)
        ok = (c is not None) == expect and oracle == expect
        verdict = "invariant" if c is not None else "not invariant"
        return ok, {"verdict": verdict, "constant": None if c is None else str(c), "sampled": oracle}

    return Check("invariance", "is_invariant_web", expect, provenance, run)


def _degree(w, expected, provenance="DERIVED") -> Check:
    def run(seed):
        W = WebOnP2.from_form(w)
        d = web_degree(W, seed)
        return d == expected and W.exact_degree() == expected, d

    return Check("degree", "web_degree", expected, provenance, run)


def _degree_formula(w) -> Check:
    def run(seed):
        res = discriminant_degree_check(WebOnP2.from_form(w), seed)
        return res.passed, {"computed": res.computed, "predicted": res.predicted,
                            "at_infinity": res.at_infinity}

    return Check("degree-formula", "discriminant_degree_check", True, "PAPER", run)


def _disc(w, expected: dict, provenance="PAPER") -> Check:
    def run(seed):
        div = discriminant_divisor(w)
        want = {parse(h) if isinstance(h, str) else h: m for h, m in expected.items()}
        return div == want, div.as_dict()

    return Check("discriminant-divisor", "discriminant_divisor",
                 {str(k): v for k, v in expected.items()}, provenance, run)


def _monodromy(w, transitive, orbit_sizes, order=None, provenance="DERIVED") -> Check:
    def run(seed):
        res = web_monodromy(w, seed=seed)
        sizes = sorted(len(o) for o in res.orbits)
        ok = res.transitive == transitive and sizes == sorted(orbit_sizes) and not res.flags
        if order is not None:
            ok = ok and res.group_order == order
        return ok, res.summary()

    expected = {"transitive": transitive, "orbit_sizes": sorted(orbit_sizes)}
    if order is not None:
        expected["group_order"] = order
    return Check("monodromy", "web_monodromy", expected, provenance, run)


def _degree_bound(phi, w, equality=None) -> Check:
    def run(seed):
        res = verify_degree_bound(phi, WebOnP2.from_form(w), seed=seed)
        ok = res.passed and all(m.holds for m in res.factors.values())
        if equality is not None:
            ok = ok and res.equality == equality and res.equality_consistent
        value = {"deg": res.deg, "k": res.k, "equality": res.equality,
                 "multiplicities": {h: [m.m, m.bound] for h, m in sorted(res.factors.items())}}
        return ok, value

    return Check("degree-bound", "verify_degree_bound", {"deg<=k": True, "equality": equality},
                 "PAPER", run)


# -- entries -----------------------------------------------------------------


def _entry_a() -> CatalogEntry:
    phi = parse("map(x^2, y^2)")
    pencil = _one_form(Y, -X)
    web = monomial_web([2, 3, 5])

    def critical_in_disc(seed):
        div = discriminant_divisor(web)
        return X in div and Y in div, div.as_dict()

    def pencil_invariant(seed):
        c = is_invariant_web(phi, pencil)
        return c is not None, None if c is None else str(c)

    checks = [
        Check("pencil-invariance", "is_invariant_web", True, "TRIVIAL", pencil_invariant),
        _invariance(phi, web),
        _degree(web, 3, "PAPER"),
        _degree_bound(phi, web, equality=True),
        Check("critical-values-in-discriminant", "discriminant_divisor", True, "PAPER", critical_in_disc),
        _degree_formula(web),
        _monodromy(web, False, [1, 1, 1], provenance="TRIVIAL"),
    ]
    return CatalogEntry("a", "monomial 3-web [2y dx + x dy][3y dx + x dy][5y dx + x dy] under (x^2, y^2)",
                        WebOnP2.from_form(web), phi, checks)


def _entry_b() -> CatalogEntry:
    phi, web = theoremE_iii(3, 1, 1, [1])

    def rejects(seed):
        try:
            theoremE_iii(2, 1, 1, [1, 1])
        except MapError as exc:
            return True, str(exc)
        return False, "accepted"

    def map_matches(seed):
        want = parse("map(x^3/(1+x*y), y^3/(1+x*y))")
        return phi == want, format_any(phi)

    checks = [
        Check("constructor", "theoremE_iii", "map(x^3/(x*y + 1), y^3/(x*y + 1))", "PAPER", map_matches),
        Check("constraint", "theoremE_iii", "l(p+q) > d rejected", "PAPER", rejects),
        _invariance(phi, web),
        _degree(web, 1, "DERIVED"),
        _degree_bound(phi, web),
    ]
    return CatalogEntry("b", "theoremE_iii(3, 1, 1, [1])", WebOnP2.from_form(web), phi, checks)


def _entry_c() -> CatalogEntry:
    phi, web = theoremE_iv(4, [1])

    def map_matches(seed):
        return phi == parse("map(y^4/(1+x*y), x^4/(1+x*y))"), format_any(phi)

    def rejects(seed):
        try:
            theoremE_iv(2, [1, 1])
        except MapError as exc:
            return True, str(exc)
        return False, "accepted"

    checks = [
        Check("constructor", "theoremE_iv", "map(y^4/(x*y + 1), x^4/(x*y + 1))", "PAPER", map_matches),
        Check("constraint", "theoremE_iv", "2l > d rejected", "PAPER", rejects),
        _invariance(phi, web),
        _degree_bound(phi, web),
    ]
    return CatalogEntry("c", "theoremE_iv(4, [1])", WebOnP2.from_form(web), phi, checks)


def _entry_d() -> CatalogEntry:
    web = parse(DUAL_CONIC)
    maps = {psi: ueda_endomorphism(parse(psi)) for psi in ("z^2", "z^2-2")}
    checks = []
    for psi, phi in maps.items():
        inv = _invariance(phi, web)
        inv.name = f"invariance[{psi}]"
        checks.append(inv)

        def degree(seed, phi=phi):
            d = algebraic_degree(phi).d
            return d == 2, d

        checks.append(Check(f"algebraic-degree[{psi}]", "algebraic_degree", 2, "DERIVED", degree))
    checks += [
        _disc(web, {"x^2 - 4*y": 1}, "DERIVED"),
        _degree(web, 0, "DERIVED"),
        _degree_formula(web),
        _monodromy(web, True, [2], order=2),
    ]
    return CatalogEntry("d", "dual-conic web with Ueda maps of z^2 and z^2 - 2",
                        WebOnP2.from_form(web), maps["z^2"], checks)


def _entry_e() -> CatalogEntry:
    web = parse(DUAL_WEB)
    phi = parse("map(x^2, y^2)")
    checks = [
        _disc(web, {"x": 1, "y": 3}),
        _invariance(phi, web, expect=False),
        _degree_formula(web),
    ]
    return CatalogEntry("e", "dual web (x - y x^2) dy^2 + 2 x y^2 dx dy - y^3 dx^2",
                        WebOnP2.from_form(web), phi, checks)


def _entry_f() -> CatalogEntry:
    pi = parse("map((x+y)^2, (x-y)^2)")
    web = parse("x*dy^2 - y*dx^2")

    def pulled(seed):
        res = pullback(pi, web)
        c = proportionality(res.primitive, parse("dx*dy"))
        target = ((X + Y) ** 2) * ((X - Y) ** 2)
        ratio = res.content.divexact(target)
        ok = c is not None and ratio is not None and ratio.is_constant()
        constant = None
        if ok:
            # raw pullback = content * primitive = constant * target * dx dy
            constant = ratio.constant_value() * c
        return ok, {"primitive": str(res.primitive), "content": str(res.content),
                    "constant": None if constant is None else str(constant)}

    def image(seed):
        ok = check_image_web(pi, web)
        return ok, ok

    checks = [
        Check("pullback", "pullback", "constant * (x+y)^2 (x-y)^2 dx dy", "PAPER", pulled),
        Check("image-web", "check_image_web", True, "PAPER", image),
    ]
    return CatalogEntry("f", "quotient map ((x+y)^2, (x-y)^2) against x dy^2 - y dx^2",
                        WebOnP2.from_form(web), pi, checks)


def _entry_g() -> CatalogEntry:
    pi = parse("map(x*y + 1/(x*y), x/y + y/x)")
    web = parse("x*(x-1)*dx^2 + 2*x*y*dx*dy - y*(y-1)*dy^2")
    image_web = parse("(x^2-4)*dy^2 - (y^2-4)*dx^2")

    def image(seed):
        ok = check_image_web(pi, web)
        return ok, ok

    def companion(seed):
        ok = check_image_web(pi, image_web)
        return ok, {"form": str(image_web), "image": ok}

    def degrees(seed):
        d1 = web_degree(WebOnP2.from_form(web), seed)
        d2 = web_degree(WebOnP2.from_form(image_web), seed)
        return d1 != d2, {"stated": d1, "image": d2}

    checks = [
        Check("image-web", "check_image_web", True, "PAPER", image),
        Check("image-web[eliminated]", "check_image_web", True, "DERIVED", companion),
        Check("degree-mismatch", "web_degree", "stated form has a different degree", "DERIVED", degrees),
    ]
    return CatalogEntry("g", "quotient map (xy + 1/(xy), x/y + y/x) against the stated 2-web",
                        WebOnP2.from_form(web), pi, checks)


def _entry_h() -> CatalogEntry:
    f = parse(LATTES_F)
    phi = PlaneMap(f, f.swap())
    w0 = parse("y^3*(1+y)^4*dx^6")
    w1 = parse("x^3*(1+x)^4*dy^6")

    @cache
    def computed():
        return family_action(phi, w0, w1)

    def action(seed):
        fa = computed()
        if fa is None:
            return False, "not invariant"
        return True, {"lambda": fa.describe(), "scale": fa.describe_scale(),
                      "fixes_every_member": fa.fixes_every_member}

    def fixed(seed):
        fa = computed()
        return fa is not None and fa.fixes_every_member, None if fa is None else fa.describe()

    checks = [
        Check("family-invariance", "family_action", "invariant family", "PAPER", action),
        Check("lambda-fixed", "family_action", "lambda -> lambda", "DERIVED", fixed),
    ]
    return CatalogEntry("h", "6-web family under (f(x), f(y)), f = -(x/27)((x+9)/(x+1))^2",
                        None, phi, checks)


def semiconjugacy(Phi: PlaneMap, f: RatFunc2) -> tuple[bool, bool]:
    """Phi(u + v, u v) against (f(u) + f(v), f(u) f(v)), one flag per coordinate."""
    u, v = RatFunc2(X), RatFunc2(Y)
    fu, fv = f.compose(u, u), f.compose(v, v)
    s, p = u + v, u * v
    return Phi.f1.compose(s, p) == fu + fv, Phi.f2.compose(s, p) == fu * fv


def _entry_i() -> CatalogEntry:
    Phi = parse(PHI_TEXT)
    f = parse(LATTES_F)

    def stated(seed):
        first, second = semiconjugacy(Phi, f)
        return first and second, {"first": first, "second": second}

    def derived(seed):
        quotient = ueda_endomorphism(f)
        first, second = semiconjugacy(quotient, f)
        return first and second and quotient.f2 == Phi.f2, {"map": format_any(quotient)}

    checks = [
        Check("semiconjugacy", "semiconjugacy", {"first": True, "second": True}, "PAPER", stated),
        Check("semiconjugacy[symmetrized]", "ueda_endomorphism", True, "DERIVED", derived),
    ]
    return CatalogEntry("i", "quotient map of (f(x), f(y)) by the coordinate swap", None, Phi, checks)


def _entry_j() -> CatalogEntry:
    phi = parse("map(x^2 + 1, y^2 + 1)")
    web = parse("dx*dy")

    def curves(seed):
        ok = is_invariant_curve(X, web) and is_invariant_curve(Y, web)
        return ok, ok

    checks = [
        _invariance(phi, web),
        _degree(web, 0, "TRIVIAL"),
        _degree_formula(web),
        Check("invariant-axes", "is_invariant_curve", True, "TRIVIAL", curves),
        _monodromy(web, False, [1, 1], provenance="TRIVIAL"),
    ]
    return CatalogEntry("j", "product map (x^2 + 1, y^2 + 1) with dx dy", WebOnP2.from_form(web), phi, checks)


_BUILDERS = {
    "a": _entry_a, "b": _entry_b, "c": _entry_c, "d": _entry_d, "e": _entry_e,
    "f": _entry_f, "g": _entry_g, "h": _entry_h, "i": _entry_i, "j": _entry_j,
}


def catalog_names() -> list[str]:
    return sorted(_BUILDERS)


def catalog(names=None) -> list[CatalogEntry]:
    names = catalog_names() if names is None else names
    unknown = sorted(set(names) - set(_BUILDERS))
    if unknown:
        raise KeyError(f"unknown catalog entries: {', '.join(unknown)}")
    return [_BUILDERS[n]() for n in sorted(set(names))]


# -- verification ------------------------------------------------------------


def _jsonable(value):
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (bool, int, float, str)) or value is None:
        return value
    return str(value)


def _run_check(check: Check, seed: int, timings: bool) -> dict:
    start = time.perf_counter()
    out = {"name": check.name, "operation": check.operation, "provenance": check.provenance,
           "expected": _jsonable(check.expected)}
    try:
        passed, value = check.run(seed)
        out["passed"] = bool(passed)
        out["value"] = _jsonable(value)
    except (WeblabError, ValueError, RuntimeError, ArithmeticError) as exc:
        log.info("check %s raised %s", check.name, exc)
        out["passed"] = False
        out["error"] = f"{type(exc).__name__}: {exc}"
    if timings:
        out["seconds"] = round(time.perf_counter() - start, 4)
    return out


def _verify_entry(name: str, seed: int, timings: bool) -> dict:
    try:
        (entry,) = catalog([name])
    except (WeblabError, ValueError) as exc:
        return {"title": name, "passed": False, "error": f"{type(exc).__name__}: {exc}", "checks": []}
    results = [_run_check(c, seed, timings) for c in entry.checks]
    return {"title": entry.title, "passed": all(r["passed"] for r in results), "checks": results}


@dataclass
class Report:
    seed: int
    entries: dict

    @property
    def passed(self) -> bool:
        return all(e["passed"] for e in self.entries.values())

    def as_dict(self) -> dict:
        return {"seed": self.seed, "passed": self.passed,
                "entries": {k: self.entries[k] for k in sorted(self.entries)}}

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=True)

    def to_text(self) -> str:
        lines = [f"seed {self.seed}"]
        for name in sorted(self.entries):
            entry = self.entries[name]
            lines.append(f"[{'PASS' if entry['passed'] else 'FAIL'}] {name}: {entry['title']}")
            if "error" in entry:
                lines.append(f"    error: {entry['error']}")
            for c in entry["checks"]:
                status = "pass" if c["passed"] else "FAIL"
                detail = c.get("error") or json.dumps(c.get("value"), sort_keys=True)
                lines.append(f"    {status:4}  {c['name']:<34} {c['provenance']:<8} {detail}")
        return "\n".join(lines)


def catalog_verify(selection=None, seed: int = 1, *, timings: bool = False, workers: int = 1) -> Report:
    """Run every check of the selected entries; errors are recorded, never raised."""
    names = catalog_names() if selection is None else sorted(set(selection))
    unknown = [n for n in names if n not in _BUILDERS]
    if unknown:
        raise KeyError(f"unknown catalog entries: {', '.join(unknown)}")
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda n: _verify_entry(n, seed, timings), names))
    else:
        results = [_verify_entry(n, seed, timings) for n in names]
    return Report(seed, dict(zip(names, results)))
