"""Numerical monodromy of web directions along a generic line.

Verdicts produced here are numerical: roots are tracked in double precision
with a predictor-corrector scheme, not certified.
"""

from __future__ import annotations

import cmath
import logging
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import SamplingError, TrackingError, WebError
from .exactalg import univariate as U
from .symforms import LineParam, SymForm, discriminant

log = logging.getLogger(__name__)

NEWTON_TOL = 1e-10
CIRCLE_VERTICES = 48


def _chordal(p, q) -> float:
    (u1, v1), (u2, v2) = p, q
    return abs(u1 * v2 - u2 * v1) / (math.hypot(abs(u1), abs(v1)) * math.hypot(abs(u2), abs(v2)))


def _normalize(p):
    u, v = p
    if abs(u) >= abs(v):
        return (1.0 + 0j, v / u)
    return (u / v, 1.0 + 0j)


class DirectionPolynomial:
    """F(u, v; t) = sum A_i(t) u^i v^(k-i) along a line, with float coefficients."""

    def __init__(self, w: SymForm, line: LineParam):
        self.k = w.k
        self.line = line
        exact = []
        for i, a in enumerate(w.coeffs):
            exact.append(line.restrict_poly(a) if not a.is_zero() else U.ZERO)
        self.exact = exact
        self.A = [np.array([complex(c) for c in p] or [0j]) for p in exact]
        self.dA = [np.array([complex(c) for c in U.derivative(p)] or [0j]) for p in exact]

    def coeffs_at(self, t):
        return [np.polynomial.polynomial.polyval(t, a) for a in self.A]

    def dcoeffs_at(self, t):
        return [np.polynomial.polynomial.polyval(t, a) for a in self.dA]

    def roots(self, t, rng=None):
        """All k roots as normalised points of P^1."""
        a = self.coeffs_at(t)
        rng = rng or random.Random(0)
        theta = rng.uniform(0, 2 * math.pi)
        # generic rotation (u, v) = (cos s - sin, sin s + cos) keeps roots finite
        c, s = math.cos(theta), math.sin(theta)
        k = self.k
        poly = np.zeros(k + 1, dtype=complex)  # in z, constant first
        for i, ai in enumerate(a):
            # u^i v^(k-i) with u = c z - s, v = s z + c
            term = np.array([ai], dtype=complex)
            for _ in range(i):
                term = np.convolve(term, [-s, c])
            for _ in range(k - i):
                term = np.convolve(term, [c, s])
            poly[: len(term)] += term
        zs = np.roots(poly[::-1])
        if len(zs) != k:
            raise TrackingError("direction polynomial degenerates at the base point")
        return [_normalize((c * z - s, s * z + c)) for z in zs]

    def _chart_eval(self, chart, z, a, da):
        k = self.k
        g = dg = gt = 0j
        if chart == 0:
            # F(1, z): coefficient A_i multiplies z^(k-i)
            for i in range(k + 1):
                e = k - i
                g += a[i] * z ** e
                gt += da[i] * z ** e
                if e:
                    dg += a[i] * e * z ** (e - 1)
        else:
            # F(z, 1): coefficient A_i multiplies z^i
            for i in range(k + 1):
                g += a[i] * z ** i
                gt += da[i] * z ** i
                if i:
                    dg += a[i] * i * z ** (i - 1)
        return g, dg, gt

    def local(self, p):
        u, v = p
        if abs(u) >= abs(v):
            return 0, v / u
        return 1, u / v

    @staticmethod
    def point(chart, z):
        return _normalize((1.0 + 0j, z) if chart == 0 else (z, 1.0 + 0j))

    def step(self, p, t0, t1):
        """Predict with the tangent, correct with Newton; None on failure."""
        chart, z = self.local(p)
        a0, da0 = self.coeffs_at(t0), self.dcoeffs_at(t0)
        g, dg, gt = self._chart_eval(chart, z, a0, da0)
        if dg == 0:
            return None
        z = z - gt / dg * (t1 - t0)
        a1, da1 = self.coeffs_at(t1), self.dcoeffs_at(t1)
        for _ in range(12):
            g, dg, _ = self._chart_eval(chart, z, a1, da1)
            if dg == 0 or not np.isfinite(z):
                return None
            delta = g / dg
            z = z - delta
            if abs(delta) <= NEWTON_TOL * max(1.0, abs(z)):
                return self.point(chart, z)
        return None


def _min_separation(points) -> float:
    best = math.inf
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            best = min(best, _chordal(points[i], points[j]))
    return best


@dataclass
class SheetSystem:
    """The fiber of the web's graph over a base point of the line."""

    base_point: complex
    sheets: list
    tolerance: float = NEWTON_TOL
    min_separation: float = 0.0

    def __post_init__(self):
        self.min_separation = _min_separation(self.sheets) if len(self.sheets) > 1 else math.inf
        if self.min_separation <= 10 * self.tolerance:
            raise SamplingError("sheets collide at the base point")

    @property
    def slopes(self):
        """dy/dx for each sheet (inf for a vertical direction)."""
        return [v / u if u != 0 else complex("inf") for u, v in self.sheets]

    def match(self, arrivals) -> tuple:
        """Permutation sending each departure sheet to the sheet it arrives at."""
        perm = []
        for p in arrivals:
            dists = [_chordal(p, q) for q in self.sheets]
            j = int(np.argmin(dists))
            if dists[j] >= self.min_separation / 3:
                raise TrackingError("matching ambiguity")
            perm.append(j)
        if len(set(perm)) != len(perm):
            raise TrackingError("matching ambiguity")
        return tuple(perm)


def track_path(F: DirectionPolynomial, sheets, vertices, min_step_ratio=1e-12):
    """Continue every sheet along the polygon through ``vertices``."""
    current = list(sheets)
    total = sum(abs(b - a) for a, b in zip(vertices, vertices[1:]))
    for a, b in zip(vertices, vertices[1:]):
        seg = b - a
        length = abs(seg)
        if length == 0:
            continue
        s = 0.0
        h = 1.0
        while s < 1.0:
            h = min(h, 1.0 - s)
            if h * length < min_step_ratio * total:
                raise TrackingError("tracking failure, refine")
            t0, t1 = a + s * seg, a + (s + h) * seg
            sep = _min_separation(current) if len(current) > 1 else math.inf
            new = []
            ok = True
            for p in current:
                q = F.step(p, t0, t1)
                if q is None or _chordal(p, q) >= sep / 3:
                    ok = False
                    break
                new.append(q)
            if ok and len(new) > 1 and _min_separation(new) <= 10 * NEWTON_TOL:
                ok = False
            if not ok:
                h /= 2
                continue
            current = new
            s += h
            h *= 2
    return current


def track_loop(F: DirectionPolynomial, system: SheetSystem, vertices) -> tuple:
    """Permutation of the sheets induced by a closed polygonal loop."""
    if vertices[0] != system.base_point or vertices[-1] != system.base_point:
        raise WebError("loop must start and end at the base point")
    arrivals = track_path(F, system.sheets, vertices)
    return system.match(arrivals)


def branch_points_on_line(w: SymForm, line: LineParam, tol: float = 1e-8) -> list:
    """Roots of the discriminant restricted to the line."""
    restricted = line.restrict_poly(discriminant(w))
    if not restricted:
        raise SamplingError("non-generic line, resample")
    sf = U.squarefree_part(restricted)
    if len(sf) <= 1:
        return []
    roots = np.roots([float(c) for c in reversed(sf)])
    out = []
    for r in roots:
        r = complex(r)
        if all(abs(r - o) > tol * max(1.0, abs(r)) for o in out):
            out.append(r)
    return sorted(out, key=lambda z: (z.real, z.imag))


def _segment_distance(p, a, b) -> float:
    d = b - a
    if d == 0:
        return abs(p - a)
    s = max(0.0, min(1.0, ((p - a) * d.conjugate()).real / abs(d) ** 2))
    return abs(p - (a + s * d))


def _circle(center, radius, start_angle, clockwise=False):
    sign = -1 if clockwise else 1
    return [center + radius * cmath.exp(1j * (start_angle + sign * 2 * math.pi * n / CIRCLE_VERTICES))
            for n in range(CIRCLE_VERTICES + 1)]


@dataclass
class LoopPlan:
    base_point: complex
    branch_points: list
    radii: list
    loops: list
    order: list
    infinity_loop: list


def plan_loops(branch_points, rng, attempts=200) -> LoopPlan:
    """Choose a base point and one elementary loop per branch point."""
    bps = list(branch_points)
    if bps:
        center = sum(bps) / len(bps)
        spread = max(1.0, max(abs(b - center) for b in bps))
    else:
        center, spread = 0j, 1.0
    for _ in range(attempts):
        t0 = center + spread * complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
        if any(abs(t0 - b) < 1e-3 * spread for b in bps):
            continue
        radii = []
        for j, b in enumerate(bps):
            others = [abs(b - c) for i, c in enumerate(bps) if i != j]
            r = min([0.5 * d for d in others] + [0.5 * abs(t0 - b), spread])
            radii.append(r)
        good = True
        loops = []
        for j, b in enumerate(bps):
            ang = cmath.phase(t0 - b)
            entry = b + radii[j] * cmath.exp(1j * ang)
            for i, c in enumerate(bps):
                if i != j and _segment_distance(c, t0, entry) < 1.2 * radii[i]:
                    good = False
            loops.append([t0] + _circle(b, radii[j], ang) + [t0])
        if not good:
            continue
        # loop around every branch point, leaving t0 through the widest angular gap
        big = 2.0 * spread + max((abs(b - t0) for b in bps), default=0.0)
        angles = sorted(cmath.phase(b - t0) % (2 * math.pi) for b in bps)
        if angles:
            gaps = [((angles[(n + 1) % len(angles)] - angles[n]) % (2 * math.pi) or 2 * math.pi, n)
                    for n in range(len(angles))]
            width, n = max(gaps)
            exit_angle = angles[n] + width / 2
        else:
            exit_angle = 0.0
        exit_pt = t0 + big * cmath.exp(1j * exit_angle)
        if any(_segment_distance(c, t0, exit_pt) < 1.2 * radii[i] for i, c in enumerate(bps)):
            continue
        infinity = [t0] + _circle(t0, big, exit_angle, clockwise=True) + [t0]
        # elementary loops in clockwise order of their spokes, starting after the exit ray
        order = sorted(range(len(bps)),
                       key=lambda j: (exit_angle - cmath.phase(bps[j] - t0)) % (2 * math.pi))
        return LoopPlan(t0, bps, radii, loops, order, infinity)
    raise SamplingError("could not place a base point avoiding the branch locus")


def compose(p, q) -> tuple:
    """First p then q."""
    return tuple(q[i] for i in p)


def inverse(p) -> tuple:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def identity(k) -> tuple:
    return tuple(range(k))


def orbits_of(generators, k) -> list:
    parent = list(range(k))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for g in generators:
        for i, j in enumerate(g):
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[ri] = rj
    groups = {}
    for i in range(k):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values())


def group_order(generators, k, cap=50000):
    """Order of the generated permutation group, or None beyond ``cap``."""
    e = identity(k)
    seen = {e}
    frontier = [e]
    gens = [tuple(g) for g in generators]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = compose(p, g)
                if q not in seen:
                    seen.add(q)
                    if len(seen) > cap:
                        return None
                    nxt.append(q)
        frontier = nxt
    return len(seen)


def cycle_notation(perm) -> str:
    seen = set()
    cycles = []
    for i in range(len(perm)):
        if i in seen or perm[i] == i:
            seen.add(i)
            continue
        cyc = []
        j = i
        while j not in seen:
            seen.add(j)
            cyc.append(j + 1)
            j = perm[j]
        cycles.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(cycles) or "()"


@dataclass
class MonodromyResult:
    generators: list
    orbits: list
    transitive: bool
    group_order: int | None
    seed: int
    line: LineParam | None = None
    base_point: complex | None = None
    branch_points: list = field(default_factory=list)
    infinity_permutation: tuple | None = None
    product_of_generators: tuple | None = None
    flags: list = field(default_factory=list)
    label: str = "numerical"

    def summary(self) -> dict:
        return {
            "generators": [cycle_notation(g) for g in self.generators],
            "orbits": [[i + 1 for i in o] for o in self.orbits],
            "transitive": self.transitive,
            "group_order": self.group_order,
            "branch_points": len(self.branch_points),
            "seed": self.seed,
            "flags": list(self.flags),
            "verdict": self.label,
        }


def random_line(rng) -> LineParam:
    def q():
        return Fraction(rng.randint(-97, 97), rng.randint(1, 97))

    while True:
        a, b, c, d = q(), q(), q(), q()
        if b != 0 and d != 0:
            return LineParam(a, b, c, d)


def web_monodromy(w: SymForm, seed: int = 1, resamplings: int = 3) -> MonodromyResult:
    """Permutation representation of loops around the branch points on a random line."""
    if w.k < 2:
        return MonodromyResult([], [[0]], True, 1, seed)
    if discriminant(w).is_zero():
        raise WebError("non-reduced web")
    rng = random.Random(seed)
    last = None
    for attempt in range(resamplings + 1):
        try:
            return _monodromy_once(w, rng, seed)
        except (TrackingError, SamplingError) as exc:
            log.info("monodromy attempt %d failed: %s", attempt, exc)
            last = exc
    raise TrackingError(f"monodromy failed after {resamplings} resamplings: {last}")


def _monodromy_once(w, rng, seed) -> MonodromyResult:
    line = random_line(rng)
    F = DirectionPolynomial(w, line)
    bps = branch_points_on_line(w, line)
    plan = plan_loops(bps, rng)
    system = SheetSystem(plan.base_point, F.roots(plan.base_point, rng))
    gens = [track_loop(F, system, loop) for loop in plan.loops]
    k = w.k
    product = identity(k)
    for j in plan.order:
        product = compose(product, gens[j])
    at_infinity = track_loop(F, system, plan.infinity_loop)
    orbits = orbits_of(gens, k)
    flags = []
    if compose(product, at_infinity) != identity(k):
        flags.append("loop composition mismatch")
    return MonodromyResult(
        generators=gens,
        orbits=orbits,
        transitive=len(orbits) == 1,
        group_order=group_order(gens, k),
        seed=seed,
        line=line,
        base_point=plan.base_point,
        branch_points=bps,
        infinity_permutation=at_infinity,
        product_of_generators=product,
        flags=flags,
    )
