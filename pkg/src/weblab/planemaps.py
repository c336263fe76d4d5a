"""Rational self-maps of the plane acting on symmetric forms."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import MapError, WebError
from .exactalg import (
    Poly2,
    RatFunc2,
    compose_poly,
    content_primitive,
    gcd,
    lcm,
    ord_along,
    resultant,
    squarefree_factors,
)
from .exactalg import univariate as U
from .symforms import SymForm, _binary_mul, _binary_pow


class PlaneMap:
    """phi(x, y) = (f1, f2) in an affine chart."""

    __slots__ = ("f1", "f2", "_homog", "_jac")

    def __init__(self, f1, f2):
        self.f1 = RatFunc2.of(f1)
        self.f2 = RatFunc2.of(f2)
        self._homog = None
        self._jac = None
        if self.f1.is_constant() or self.f2.is_constant():
            raise MapError("non-dominant map")
        if self.jacobian().is_zero():
            raise MapError("non-dominant map")

    @classmethod
    def identity(cls) -> PlaneMap:
        return cls(Poly2.x(), Poly2.y())

    def jacobian(self) -> RatFunc2:
        if self._jac is None:
            f1, f2 = self.f1, self.f2
            self._jac = f1.diff_x() * f2.diff_y() - f1.diff_y() * f2.diff_x()
        return self._jac

    def __call__(self, xv, yv):
        return (self.f1(xv, yv), self.f2(xv, yv))

    def after(self, psi: PlaneMap) -> PlaneMap:
        """The composition self o psi."""
        return PlaneMap(self.f1.compose(psi.f1, psi.f2), self.f2.compose(psi.f1, psi.f2))

    def homogeneous_components(self) -> tuple[Poly2, Poly2, Poly2]:
        """Coprime (F0, F1, F2) with phi = (F1/F0, F2/F0)."""
        if self._homog is None:
            den = lcm(self.f1.den, self.f2.den)
            F1 = self.f1.num * den.divexact(self.f1.den)
            F2 = self.f2.num * den.divexact(self.f2.den)
            g = gcd(den, gcd(F1, F2))
            self._homog = (den.divexact(g), F1.divexact(g), F2.divexact(g))
        return self._homog

    @property
    def degree(self) -> int:
        return max(F.degree for F in self.homogeneous_components())

    def __eq__(self, other):
        return isinstance(other, PlaneMap) and (self.f1, self.f2) == (other.f1, other.f2)

    def __hash__(self):
        return hash((self.f1, self.f2))

    def __str__(self):
        from .expr import format_map
        return format_map(self)

    def __repr__(self):
        return f"PlaneMap({str(self)!r})"


def jacobian(phi: PlaneMap) -> RatFunc2:
    return phi.jacobian()


# -- pullback -----------------------------------------------------------------


@dataclass(frozen=True)
class PullbackResult:
    """phi^* omega = (content / denominator) * primitive."""

    primitive: SymForm
    content: Poly2
    denominator: Poly2

    def raw(self) -> list[RatFunc2]:
        scale = RatFunc2(self.content, self.denominator)
        return [scale * c for c in self.primitive.coeffs]

    def content_divisor(self):
        from .symforms import Divisor
        return Divisor.of_poly(self.content)


def _differentials(phi: PlaneMap):
    """dX = (A1 dx + B1 dy)/Q1^2 and dY likewise, as [dy, dx] coefficient lists."""
    out = []
    for f in (phi.f1, phi.f2):
        P, Q = f.num, f.den
        if Q.is_constant():
            out.append(([P.diff_y(), P.diff_x()], Q, 1))
        else:
            A = P.diff_x() * Q - P * Q.diff_x()
            B = P.diff_y() * Q - P * Q.diff_y()
            out.append(([B, A], Q, 2))
    return out


def _raw_pullback(phi: PlaneMap, forms):
    """Numerators of phi^* for several forms over one common denominator."""
    (lin1, Q1, e1), (lin2, Q2, e2) = _differentials(phi)
    k = forms[0].k
    D1 = max(a.deg_x for w in forms for a in w.coeffs if not a.is_zero())
    D2 = max(a.deg_y for w in forms for a in w.coeffs if not a.is_zero())
    P1, P2 = phi.f1.num, phi.f2.num
    p1 = [P1 ** i for i in range(D1 + 1)]
    q1 = [Q1 ** i for i in range(max(D1, e1 * k) + 1)]
    p2 = [P2 ** j for j in range(D2 + 1)]
    q2 = [Q2 ** j for j in range(max(D2, e2 * k) + 1)]
    dxp = [_binary_pow(lin1, i) for i in range(k + 1)]
    dyp = [_binary_pow(lin2, i) for i in range(k + 1)]
    results = []
    for w in forms:
        total = [Poly2.const(0)] * (k + 1)
        for i, a in enumerate(w.coeffs):
            if a.is_zero():
                continue
            comp = Poly2.const(0)
            for (s, t), c in a.items():
                comp = comp + p1[s] * q1[D1 - s] * p2[t] * q2[D2 - t] * c
            # bring dX^i dY^(k-i) to denominator Q1^(e1 k) Q2^(e2 k)
            comp = comp * q1[e1 * (k - i)] * q2[e2 * i]
            for n, t in enumerate(_binary_mul(dxp[i], dyp[k - i])):
                if not t.is_zero():
                    total[n] = total[n] + comp * t
        results.append(total)
    den = Q1 ** (D1 + e1 * k) * Q2 ** (D2 + e2 * k)
    return results, den, (Q1, Q2)


def _cancel(content: Poly2, den: Poly2, bases):
    """Remove common factors of content and den, which divide the bases."""
    base = Poly2.const(1)
    for Q in bases:
        if not Q.is_constant():
            base = lcm(base, Q)
    if base.is_constant():
        return content, den
    parts = [f for f, _ in squarefree_factors(base)]
    for f in parts:
        while True:
            g = gcd(content, f)
            if g.is_constant():
                break
            q = den.divexact(g)
            if q is None:
                break
            content, den = content.divexact(g), q
    return content, den


def pullback(phi: PlaneMap, w: SymForm) -> PullbackResult:
    """Pull back a symmetric form and split off its divisorial content."""
    (numerators,), den, bases = _raw_pullback(phi, [w])
    if all(c.is_zero() for c in numerators):
        raise WebError("pullback is identically zero")
    content, prims = content_primitive(numerators)
    c = den.leading_coeff()
    content, den = content * (1 / c), den.monic()
    content, den = _cancel(content, den, bases)
    form = SymForm(prims)
    form._primitive = True
    return PullbackResult(form, content, den)


def proportionality(p: SymForm, q: SymForm):
    """Return c with p == c*q, or None."""
    if p.k != q.k:
        return None
    for a, b in zip(p.coeffs, q.coeffs):
        if not b.is_zero():
            if a.is_zero():
                return None
            c = a.leading_coeff() / b.leading_coeff()
            break
    else:
        return None
    if all(a == b * c for a, b in zip(p.coeffs, q.coeffs)):
        return c
    return None


def is_invariant_web(phi: PlaneMap, w: SymForm):
    """The constant c with primitive(phi^* w) = c w, or None if w is not invariant."""
    if not w.is_primitive:
        raise WebError("invariance is tested on primitive forms")
    res = pullback(phi, w)
    return proportionality(res.primitive, w)


# -- independent numeric-sampling oracle --------------------------------------


class Dual:
    """a + b eps with eps^2 = 0, for exact directional derivatives."""

    __slots__ = ("a", "b")

    def __init__(self, a, b=0):
        self.a = a
        self.b = b

    @staticmethod
    def _c(o):
        return o if isinstance(o, Dual) else Dual(o, 0)

    def __add__(self, o):
        o = self._c(o)
        return Dual(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, o):
        o = self._c(o)
        return Dual(self.a - o.a, self.b - o.b)

    def __rsub__(self, o):
        return self._c(o) - self

    def __mul__(self, o):
        o = self._c(o)
        return Dual(self.a * o.a, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = self._c(o)
        return Dual(self.a / o.a, (self.b * o.a - self.a * o.b) / (o.a * o.a))

    def __rtruediv__(self, o):
        return self._c(o) / self

    def __pow__(self, n):
        result = Dual(1, 0)
        for _ in range(n):
            result = result * self
        return result


def sampled_invariance(phi: PlaneMap, w: SymForm, points=10, seed=0) -> bool:
    """Test phi^* w proportional to w by exact evaluation at random points.

    Independent of the symbolic pipeline: derivatives come from dual numbers
    and no gcd or content extraction is involved. At each point the ratio
    (phi^* w)(v) / w(v) must be the same for k+1 random directions v.
    """
    rng = random.Random(seed)
    k = w.k
    done = 0
    attempts = 0
    while done < points:
        attempts += 1
        if attempts > 50 * points:
            raise WebError("could not find generic sample points")
        px = Fraction(rng.randint(-97, 97), rng.randint(1, 97))
        py = Fraction(rng.randint(-97, 97), rng.randint(1, 97))
        try:
            image = phi(px, py)
        except ZeroDivisionError:
            continue
        ratios = set()
        ok = True
        for _ in range(k + 1):
            vx = Fraction(rng.randint(-20, 20), rng.randint(1, 20))
            vy = Fraction(rng.randint(-20, 20), rng.randint(1, 20))
            try:
                X = phi.f1(Dual(px, vx), Dual(py, vy))
                Y = phi.f2(Dual(px, vx), Dual(py, vy))
            except ZeroDivisionError:
                ok = False
                break
            pulled = w.evaluate(X.b, Y.b, at=(image[0], image[1]))
            base = w.evaluate(vx, vy, at=(px, py))
            if base == 0:
                ok = False
                break
            ratios.add(pulled / base)
        if not ok:
            continue
        done += 1
        if len(ratios) != 1 or 0 in ratios:
            return False
    return True


# -- multiplicities ------------------------------------------------------------


def _tangential(h: Poly2, F: Poly2) -> Poly2:
    return h.diff_y() * F.diff_x() - h.diff_x() * F.diff_y()


def contracts(phi: PlaneMap, h: Poly2) -> bool:
    """True when phi maps the curve {h = 0} to a point."""
    F = phi.homogeneous_components()
    for i in range(3):
        for j in range(i + 1, 3):
            minor = F[i] * _tangential(h, F[j]) - F[j] * _tangential(h, F[i])
            if not h.divides(minor):
                return False
    return True


@dataclass(frozen=True)
class Multiplicity:
    m: int
    bound: int
    ord_jacobian: int
    image_invariant: bool
    equality: bool
    image_completely_invariant: bool | None = None

    @property
    def holds(self) -> bool:
        return self.m <= self.bound


def multiplicity_m(phi: PlaneMap, w: SymForm, h: Poly2, image_curve: Poly2 | None = None,
                   pulled: PullbackResult | None = None) -> Multiplicity:
    """Vanishing order of phi^* w along {h = 0} against k ord_h(jacobian)."""
    if h.is_constant():
        raise WebError("curve polynomial must be nonconstant")
    if contracts(phi, h):
        raise MapError("contracted curve")
    res = pulled or pullback(phi, w)
    m = ord_along(h, res.content)
    oj = ord_along(h, phi.jacobian().num)
    bound = w.k * oj
    complete = None
    if image_curve is not None and m == bound and m > 0:
        from .webgeom import is_completely_invariant_curve
        complete = is_completely_invariant_curve(image_curve, w)
    return Multiplicity(m, bound, oj, m > 0, m == bound, complete)


# -- degree --------------------------------------------------------------------


@dataclass(frozen=True)
class DegreeInfo:
    d: int
    e: int
    lam: int
    entropy: str


def _as_y_coeffs(F: Poly2):
    return [Poly2.from_x_poly(r) for r in F.as_y_poly()]


def _pair_eliminant(F: Poly2, G: Poly2) -> Poly2:
    if F.deg_y <= 0 and G.deg_y <= 0:
        return gcd(F, G)
    return resultant(_as_y_coeffs(F), _as_y_coeffs(G))


def _affine_base_points(F, tol=1e-7):
    elim = Poly2.const(0)
    for i in range(3):
        for j in range(i + 1, 3):
            elim = gcd(elim, _pair_eliminant(F[i], F[j]))
    if elim.is_constant():
        return []
    xs = np.roots([float(c) for c in reversed(U.squarefree_part(elim.as_x_poly()[0]))])
    found = []
    for x0 in xs:
        rows = [[complex(U.evaluate(r, x0)) for r in Fi.as_y_poly()] for Fi in F]
        rows = [np.trim_zeros(np.array(r), "b") for r in rows]
        cands = [r for r in rows if len(r) > 1]
        if any(len(r) == 1 and abs(r[0]) > tol for r in rows):
            continue
        if not cands:
            continue
        pivot = min(cands, key=len)
        for y0 in np.roots(pivot[::-1]):
            if all(abs(np.polyval(r[::-1], y0)) <= tol * max(1.0, np.abs(r).max()) for r in rows if len(r)):
                found.append((complex(x0), complex(y0)))
    return found


def _infinite_base_points(F, d) -> bool:
    tops = [Fi.homogeneous_part(d) for Fi in F]
    tops = [t for t in tops if not t.is_zero()]
    if all(t.coeff(d, 0) == 0 for t in tops):
        return True
    g = U.ZERO
    for t in tops:
        g = U.gcd(g, U.trim(t.coeff(i, d - i) for i in range(d + 1)))
    return len(g) > 1


def algebraic_degree(phi: PlaneMap) -> DegreeInfo:
    """Degree d of an endomorphism of P^2, with e = d^2 and lambda = d."""
    F = phi.homogeneous_components()
    d = phi.degree
    if d < 1:
        raise MapError("non-dominant map")
    if _infinite_base_points(F, d) or _affine_base_points(F):
        raise MapError("not an endomorphism")
    return DegreeInfo(d, d * d, d, f"2·log({d})")


# -- image webs ----------------------------------------------------------------


def check_image_web(pi: PlaneMap, w: SymForm) -> bool:
    """True iff pi maps each vertical line {x = c} into a leaf of w."""
    t1, t2 = pi.f1.diff_y(), pi.f2.diff_y()
    if t1.is_zero() and t2.is_zero():
        raise MapError("contracted fibration")
    total = RatFunc2(0)
    # w evaluated at pi(c, t) on the tangent vector d/dt pi(c, t)
    terms = {}
    for i, a in enumerate(w.coeffs):
        if a.is_zero():
            continue
        val = compose_poly(a, pi.f1, pi.f2) * (t1 ** i) * (t2 ** (w.k - i))
        terms[i] = val
    nums = []
    den = Poly2.const(1)
    for val in terms.values():
        den = lcm(den, val.den)
    for val in terms.values():
        nums.append(val.num * den.divexact(val.den))
    total = Poly2.const(0)
    for n in nums:
        total = total + n
    return total.is_zero()


# -- one-parameter families --------------------------------------------------


@dataclass(frozen=True)
class FamilyAction:
    """phi^*(w0 + l w1) = c(l) (w0 + mu(l) w1) up to the divisorial content.

    c(l) = scale[0] + scale[1] l and mu(l) = (mobius[0] + mobius[1] l) / (mobius[2] + mobius[3] l).
    """

    scale: tuple
    mobius: tuple
    content: Poly2
    denominator: Poly2

    @staticmethod
    def _affine(c0, c1) -> str:
        parts = []
        if c0:
            parts.append(str(c0))
        if c1:
            coef = "" if c1 == 1 else "-" if c1 == -1 else f"{c1}*"
            parts.append(f"{coef}lambda")
        return " + ".join(parts).replace("+ -", "- ") or "0"

    def describe(self) -> str:
        a, b, c, d = self.mobius
        if self.fixes_every_member:
            return "lambda -> lambda"
        if d == 0:
            return f"lambda -> {self._affine(a / c, b / c)}"
        return f"lambda -> ({self._affine(a, b)})/({self._affine(c, d)})"

    def describe_scale(self) -> str:
        return self._affine(*self.scale)

    @property
    def fixes_every_member(self) -> bool:
        a, b, c, d = self.mobius
        return a == 0 and d == 0 and b == c


def _flatten(forms):
    keys = sorted({(i, m) for w in forms for i, a in enumerate(w) for m, _ in a.items()})
    return [[w[i].coeff(*m) for (i, m) in keys] for w in forms]


def _solve_pair(target, b, c):
    """Constants (alpha, beta) with target = alpha b + beta c exactly, or None."""
    rows = list(zip(b, c, target))
    # Gaussian elimination on the 2-column system
    m = [list(map(Fraction, r)) for r in rows]
    sol = [None, None]
    piv_rows = []
    col_row = {}
    r = 0
    for col in range(2):
        p = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        pv = m[r][col]
        m[r] = [v / pv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * bb for a, bb in zip(m[i], m[r])]
        col_row[col] = r
        piv_rows.append(r)
        r += 1
    for i in range(r, len(m)):
        if m[i][2] != 0:
            return None
    for col in range(2):
        sol[col] = m[col_row[col]][2] if col in col_row else Fraction(0)
    return tuple(sol)


def family_action(phi: PlaneMap, w0: SymForm, w1: SymForm) -> FamilyAction | None:
    """Induced action of phi on the pencil w0 + lambda w1 (lambda a formal symbol)."""
    (n0, n1), den, bases = _raw_pullback(phi, [w0, w1])
    content, prims = content_primitive(n0 + n1)
    k = w0.k
    p0, p1 = prims[: k + 1], prims[k + 1:]
    content, den = _cancel(content * (1 / den.leading_coeff()), den.monic(), bases)
    flat_b, flat_c, flat_p0, flat_p1 = _flatten([w0.coeffs, w1.coeffs, p0, p1])
    s0 = _solve_pair(flat_p0, flat_b, flat_c)
    s1 = _solve_pair(flat_p1, flat_b, flat_c)
    if s0 is None or s1 is None:
        return None
    (a1, a2), (b1, b2) = s0, s1
    return FamilyAction((a1, b1), (a2, b2, a1, b1), content, den)
