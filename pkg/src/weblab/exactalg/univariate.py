"""Dense univariate polynomials over Q.

A polynomial is a tuple of Fractions, constant term first, with no trailing
zeros. The zero polynomial is the empty tuple.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as igcd, lcm as ilcm

UPoly = tuple

ZERO: UPoly = ()
ONE: UPoly = (Fraction(1),)


def trim(coeffs) -> UPoly:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(Fraction(v) for v in c)


def degree(p: UPoly) -> int:
    return len(p) - 1


def add(p: UPoly, q: UPoly) -> UPoly:
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, c in enumerate(q):
        out[i] += c
    return trim(out)


def sub(p: UPoly, q: UPoly) -> UPoly:
    return add(p, scale(q, -1))


def scale(p: UPoly, c) -> UPoly:
    if c == 0:
        return ZERO
    return tuple(v * c for v in p)


def mul(p: UPoly, q: UPoly) -> UPoly:
    if not p or not q:
        return ZERO
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return trim(out)


def power(p: UPoly, n: int) -> UPoly:
    result = ONE
    base = p
    while n:
        if n & 1:
            result = mul(result, base)
        base = mul(base, base)
        n >>= 1
    return result


def divmod_(p: UPoly, q: UPoly) -> tuple[UPoly, UPoly]:
    if not q:
        raise ZeroDivisionError("division by the zero polynomial")
    r = list(p)
    dq = len(q) - 1
    lc = q[-1]
    if len(r) <= dq:
        return ZERO, trim(r)
    quo = [Fraction(0)] * (len(r) - dq)
    for i in range(len(r) - 1, dq - 1, -1):
        c = r[i] / lc
        if c == 0:
            continue
        quo[i - dq] = c
        for j, b in enumerate(q):
            r[i - dq + j] -= c * b
    return trim(quo), trim(r[:dq])


def monic(p: UPoly) -> UPoly:
    if not p:
        return ZERO
    return scale(p, 1 / p[-1])


def gcd(p: UPoly, q: UPoly) -> UPoly:
    """Monic gcd; gcd(0, 0) = 0."""
    a, b = trim(p), trim(q)
    while b:
        a, b = b, divmod_(a, b)[1]
        # monic remainders keep the rationals small
        b = monic(b)
    return monic(a)


def derivative(p: UPoly) -> UPoly:
    return trim(i * c for i, c in enumerate(p) if i > 0)


def evaluate(p: UPoly, t):
    acc = 0
    for c in reversed(p):
        acc = acc * t + c
    return acc


def numeric_content(coeffs) -> Fraction:
    """Positive rational gcd of a collection of rationals (0 if all vanish)."""
    nums = 0
    dens = 1
    seen = False
    for c in coeffs:
        c = Fraction(c)
        if c == 0:
            continue
        seen = True
        nums = igcd(nums, c.numerator)
        dens = ilcm(dens, c.denominator)
    if not seen:
        return Fraction(0)
    return Fraction(nums, dens)


def squarefree_decomposition(p: UPoly) -> list[tuple[UPoly, int]]:
    """Yun's algorithm. Returns monic pairwise coprime (factor, multiplicity)."""
    p = monic(trim(p))
    if len(p) <= 1:
        return []
    out = []
    dp = derivative(p)
    a = gcd(p, dp)
    b = divmod_(p, a)[0]
    c = divmod_(dp, a)[0]
    d = sub(c, derivative(b))
    i = 1
    while len(b) > 1:
        a = gcd(b, d)
        if len(a) > 1:
            out.append((a, i))
        b = divmod_(b, a)[0]
        c = divmod_(d, a)[0]
        d = sub(c, derivative(b))
        i += 1
    return out


def squarefree_part(p: UPoly) -> UPoly:
    p = trim(p)
    if len(p) <= 1:
        return monic(p)
    return monic(divmod_(p, gcd(p, derivative(p)))[0])


def compose_linear(p: UPoly, a, b) -> UPoly:
    """p(a + b t) as a polynomial in t."""
    result = ZERO
    lin = trim((a, b))
    for c in reversed(p):
        result = add(mul(result, lin), (Fraction(c),) if c else ZERO)
    return result


def order_at_zero(p: UPoly) -> int:
    for i, c in enumerate(p):
        if c != 0:
            return i
    raise ValueError("zero polynomial has infinite order")
