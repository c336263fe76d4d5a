"""gcd, content, resultants, valuations and squarefree splitting on Poly2."""

from __future__ import annotations

from fractions import Fraction
from math import gcd as gcd_int

from ..errors import AlgebraError
from . import univariate as U
from .poly import Poly2

# Recursive representation: a list of univariate x-polys indexed by y-degree.


def _rtrim(rows):
    rows = list(rows)
    while rows and not rows[-1]:
        rows.pop()
    return rows


def _rcontent(rows):
    g = U.ZERO
    for r in rows:
        if r:
            g = U.gcd(g, r)
            if len(g) == 1:
                break
    return g


def _rprimitive(rows):
    """Divide out the Q[x]-content and make the leading coefficient monic-led."""
    c = _rcontent(rows)
    if len(c) > 1:
        rows = [U.divmod_(r, c)[0] for r in rows]
    lead = rows[-1][-1]
    if lead != 1:
        inv = 1 / lead
        rows = [U.scale(r, inv) for r in rows]
    return rows


def _rprem(a, b):
    """Pseudo-remainder of a by b in Q[x][y]."""
    a = list(a)
    n = len(b) - 1
    lc = b[-1]
    while len(a) - 1 >= n and a:
        m = len(a) - 1
        lead = a[-1]
        shift = m - n
        a = [U.mul(r, lc) for r in a]
        for j, r in enumerate(b):
            a[j + shift] = U.sub(a[j + shift], U.mul(lead, r))
        a = _rtrim(a)
        if a:
            # keep rows small without changing the ideal
            c = _rcontent(a)
            if len(c) > 1:
                a = [U.divmod_(r, c)[0] for r in a]
    return a


def gcd(p: Poly2, q: Poly2) -> Poly2:
    """Greatest common divisor, normalised monic in the grlex order.

    Recursive on y as the main variable: gcd of Q[x]-contents times the
    primitive-PRS gcd of primitive parts.
    """
    if p.is_zero():
        return q.monic()
    if q.is_zero():
        return p.monic()
    if p.is_constant() or q.is_constant():
        return Poly2.const(1)
    a = _rtrim(p.as_y_poly())
    b = _rtrim(q.as_y_poly())
    ca, cb = _rcontent(a), _rcontent(b)
    cont = U.gcd(ca, cb)
    a = [U.divmod_(r, ca)[0] for r in a]
    b = [U.divmod_(r, cb)[0] for r in b]
    if len(a) == 1 or len(b) == 1:
        return Poly2.from_x_poly(cont).monic()
    if len(a) < len(b):
        a, b = b, a
    a, b = _rprimitive(a), _rprimitive(b)
    while True:
        r = _rprem(a, b)
        if not r:
            break
        if len(r) == 1:
            b = [U.ONE]
            break
        a, b = b, _rprimitive(r)
    g = Poly2.from_y_rows(_rprimitive(b))
    return (g * Poly2.from_x_poly(cont)).monic()


def lcm(p: Poly2, q: Poly2) -> Poly2:
    if p.is_zero() or q.is_zero():
        return Poly2.const(0)
    return (p.divexact(gcd(p, q)) * q).monic()


def content_primitive(coeffs):
    """Split a coefficient sequence into (content, primitive parts).

    The content is the numeric content times the monic polynomial gcd, so
    content * primitive[i] == coeffs[i] for every i.
    """
    coeffs = list(coeffs)
    nonzero = [c for c in coeffs if not c.is_zero()]
    if not nonzero:
        raise AlgebraError("zero form")
    g = nonzero[0].monic()
    for c in nonzero[1:]:
        if g.is_constant():
            break
        g = gcd(g, c)
    prims = [c.divexact(g) for c in coeffs]
    num = U.numeric_content(v for p in prims for _, v in p.items())
    content = g * num
    prims = [p * (1 / num) for p in prims]
    return content, prims


def _bareiss_det(matrix):
    n = len(matrix)
    m = [list(row) for row in matrix]
    sign = 1
    prev = Poly2.const(1)
    for k in range(n - 1):
        if m[k][k].is_zero():
            for r in range(k + 1, n):
                if not m[r][k].is_zero():
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return Poly2.const(0)
        piv = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            for j in range(k + 1, n):
                num = m[i][j] * piv - mik * m[k][j]
                if num.is_zero():
                    m[i][j] = num
                    continue
                q = num.divexact(prev)
                assert q is not None, "Bareiss step must divide exactly"
                m[i][j] = q
            m[i][k] = Poly2.const(0)
        prev = piv
    det = m[n - 1][n - 1]
    return det if sign > 0 else -det


def sylvester_matrix(P, Q):
    """Sylvester matrix of coefficient sequences given constant term first."""
    m, n = len(P) - 1, len(Q) - 1
    size = m + n
    zero = Poly2.const(0)
    hi_p = list(reversed(P))
    hi_q = list(reversed(Q))
    rows = []
    for i in range(n):
        rows.append([zero] * i + hi_p + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + hi_q + [zero] * (size - n - 1 - i))
    return rows


def resultant(P, Q) -> Poly2:
    """Resultant of univariate polynomials with Poly2 coefficients.

    ``P`` and ``Q`` list coefficients from the constant term upwards; their
    formal degrees are ``len - 1`` even when the top coefficient vanishes,
    which gives the resultant of the associated binary forms.
    """
    P = [c if isinstance(c, Poly2) else Poly2.const(c) for c in P]
    Q = [c if isinstance(c, Poly2) else Poly2.const(c) for c in Q]
    if not P or not Q or all(c.is_zero() for c in P) or all(c.is_zero() for c in Q):
        raise AlgebraError("resultant of a zero polynomial")
    m, n = len(P) - 1, len(Q) - 1
    if m == 0 and n == 0:
        raise AlgebraError("degenerate resultant")
    if m == 0:
        return P[0] ** n
    if n == 0:
        return Q[0] ** m
    return _packed_resultant(P, Q)


# The Sylvester determinant is computed by evaluating x at the integers
# 0..D (D bounds its x-degree), running fraction-free elimination on each
# specialisation and interpolating. A univariate integer polynomial sum c_j y^j
# is packed into the single integer sum c_j 2^(B j); with B large enough for
# every intermediate, products and exact quotients of packed integers are
# packed products and quotients.


def _pack(coeffs, bits: int) -> int:
    value = 0
    for c in reversed(coeffs):
        value = (value << bits) + c
    return value


def _unpack(value: int, bits: int) -> list[int]:
    out = []
    mask = (1 << bits) - 1
    half = 1 << (bits - 1)
    while value:
        digit = value & mask
        if digit >= half:
            digit -= 1 << bits
        out.append(digit)
        value = (value - digit) >> bits
    return out


def _integral(coeffs):
    """Scale a coefficient list to integer coefficients; returns (scale, list)."""
    den = 1
    for c in coeffs:
        for _, v in c.items():
            den = den * v.denominator // gcd_int(den, v.denominator)
    return den, [c * den for c in coeffs]


def _specialise(entry, x0: int) -> list[int]:
    """Integer coefficients in y of entry(x0, y)."""
    out = [0] * (entry.deg_y + 1) if not entry.is_zero() else []
    for (i, j), c in entry.items():
        out[j] += int(c) * x0 ** i
    while out and out[-1] == 0:
        out.pop()
    return out


def _packed_det(rows) -> list[int]:
    """Determinant of a matrix of univariate integer polynomials (lists)."""
    n = len(rows)
    # Hadamard on |y| = 1 bounds every minor by the product of row 2-norms;
    # numerators m_ij piv - m_ik m_kj are at most twice its square
    bound = 1
    for row in rows:
        bound *= max(1, sum(sum(abs(c) for c in e) ** 2 for e in row))
    bits = (2 * bound).bit_length() + 2
    m = [[_pack(e, bits) for e in row] for row in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return []
        piv = m[k][k]
        rowk = m[k]
        for i in range(k + 1, n):
            rowi = m[i]
            mik = rowi[k]
            for j in range(k + 1, n):
                q, r = divmod(rowi[j] * piv - mik * rowk[j], prev)
                assert r == 0, "Bareiss step must divide exactly"
                rowi[j] = q
            rowi[k] = 0
        prev = piv
    return _unpack(sign * m[n - 1][n - 1], bits)


def _stirling_rows(n: int) -> list[list[int]]:
    """Coefficients of the falling factorials x (x-1) ... (x-k+1), k = 0..n."""
    rows = [[1]]
    for k in range(n):
        prev = rows[-1]
        nxt = [0] * (len(prev) + 1)
        for i, c in enumerate(prev):
            nxt[i + 1] += c
            nxt[i] -= k * c
        rows.append(nxt)
    return rows


def _interpolate(values: list[int]) -> list[Fraction]:
    """Polynomial through (t, values[t]) for t = 0..n, lowest degree first."""
    n = len(values) - 1
    diffs = []
    cur = list(values)
    while cur:
        diffs.append(cur[0])
        cur = [b - a for a, b in zip(cur, cur[1:])]
    fact = [1]
    for k in range(1, n + 1):
        fact.append(fact[-1] * k)
    acc = [0] * (n + 1)
    for k, (d, row) in enumerate(zip(diffs, _stirling_rows(n))):
        if d:
            scale = d * (fact[n] // fact[k])
            for i, c in enumerate(row):
                acc[i] += scale * c
    return [Fraction(a, fact[n]) for a in acc]


def _packed_resultant(P, Q) -> Poly2:
    alpha, Pi = _integral(P)
    beta, Qi = _integral(Q)
    m, n = len(P) - 1, len(Q) - 1
    matrix = sylvester_matrix(Pi, Qi)
    xdeg = sum(max((e.deg_x for e in row if not e.is_zero()), default=0) for row in matrix)
    samples = []
    for x0 in range(xdeg + 1):
        samples.append(_packed_det([[_specialise(e, x0) for e in row] for row in matrix]))
    ylen = max((len(s) for s in samples), default=0)
    terms = {}
    for j in range(ylen):
        column = [s[j] if j < len(s) else 0 for s in samples]
        if any(column):
            for i, c in enumerate(_interpolate(column)):
                if c:
                    terms[(i, j)] = c
    # Res(alpha P, beta Q) = alpha^n beta^m Res(P, Q)
    return Poly2._raw(terms) * Fraction(1, alpha ** n * beta ** m)


def ord_along(h: Poly2, p: Poly2) -> int:
    """Largest m with h**m dividing p."""
    if p.is_zero():
        raise AlgebraError("infinite order")
    if h.is_constant():
        raise AlgebraError("order along a constant is undefined")
    m = 0
    while True:
        q = p.divexact(h)
        if q is None:
            return m
        p = q
        m += 1


def _yun_y(p: Poly2):
    """Squarefree decomposition of a y-primitive polynomial with respect to y."""
    out = []
    if p.deg_y <= 0:
        return out
    dp = p.diff_y()
    a = gcd(p, dp)
    b = p.divexact(a)
    c = dp.divexact(a)
    d = c - b.diff_y()
    i = 1
    while b.deg_y > 0:
        a = gcd(b, d)
        if not a.is_constant():
            out.append((a.monic(), i))
        b = b.divexact(a)
        c = d.divexact(a)
        d = c - b.diff_y()
        i += 1
    return out


def squarefree_factors(p: Poly2) -> list[tuple[Poly2, int]]:
    """Split p into monic, pairwise coprime squarefree factors with multiplicities.

    Factors depending on x only and on y only are separated from the mixed
    part, which is then split by Yun's algorithm in y. Constants are dropped.
    """
    if p.is_zero():
        raise AlgebraError("squarefree splitting of the zero polynomial")
    if p.is_constant():
        return []
    rows = _rtrim(p.as_y_poly())
    cx = _rcontent(rows)
    out = [(Poly2.from_x_poly(f), m) for f, m in U.squarefree_decomposition(cx)]
    rest = p.divexact(Poly2.from_x_poly(cx))
    cols = _rtrim(rest.as_x_poly())
    cy = _rcontent(cols)
    out += [(Poly2.from_y_poly(f), m) for f, m in U.squarefree_decomposition(cy)]
    rest = rest.divexact(Poly2.from_y_poly(cy))
    out += _yun_y(rest)
    return [(f.monic(), m) for f, m in out]


def squarefree_part(p: Poly2) -> Poly2:
    result = Poly2.const(1)
    for f, _ in squarefree_factors(p):
        result = result * f
    return result
