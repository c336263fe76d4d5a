"""Text grammar for polynomials, rational functions, symmetric forms and maps.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := ('-' | '+') factor | atom ('^' nat)?
    atom   := rational | 'x' | 'y' | 'dx' | 'dy' | '(' expr ')'
    map    := 'map' '(' expr ',' expr ')'

Forms must be homogeneous in (dx, dy); dx and dy may not appear inside a
map or in a denominator.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ParseError
from .exactalg import Poly2, RatFunc2

# -- printing ---------------------------------------------------------------


def _format_coeff(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def _format_monomial(i, j) -> str:
    parts = []
    if i:
        parts.append("x" if i == 1 else f"x^{i}")
    if j:
        parts.append("y" if j == 1 else f"y^{j}")
    return "*".join(parts)


def format_poly(p: Poly2) -> str:
    if p.is_zero():
        return "0"
    out = []
    for n, ((i, j), c) in enumerate(p.sorted_terms()):
        neg = c < 0
        a = -c if neg else c
        mono = _format_monomial(i, j)
        if not mono:
            body = _format_coeff(a)
        elif a == 1:
            body = mono
        else:
            body = f"{_format_coeff(a)}*{mono}"
        if n == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


def _wrap(p: Poly2, denominator=False) -> str:
    s = format_poly(p)
    simple = len(p) <= 1 and not s.startswith("-") and "/" not in s
    if denominator:
        simple = simple and "*" not in s
    return s if simple else f"({s})"


def format_ratfunc(f: RatFunc2) -> str:
    if f.den == 1:
        return format_poly(f.num)
    return f"{_wrap(f.num)}/{_wrap(f.den, denominator=True)}"


def format_form(form) -> str:
    terms = []
    k = form.k
    for i in range(k, -1, -1):
        a = form.coeffs[i]
        if a.is_zero():
            continue
        diffs = []
        if i:
            diffs.append("dx" if i == 1 else f"dx^{i}")
        if k - i:
            diffs.append("dy" if k - i == 1 else f"dy^{k - i}")
        d = "*".join(diffs)
        if a == 1:
            terms.append(d)
        elif a == -1:
            terms.append(f"-{d}")
        elif len(a) == 1:
            terms.append(f"{format_poly(a)}*{d}")
        else:
            terms.append(f"({format_poly(a)})*{d}")
    s = " + ".join(terms)
    return s.replace("+ -", "- ")


def format_map(phi) -> str:
    return f"map({format_ratfunc(phi.f1)}, {format_ratfunc(phi.f2)})"


def format_any(obj) -> str:
    from .planemaps import PlaneMap
    from .symforms import SymForm

    if isinstance(obj, Poly2):
        return format_poly(obj)
    if isinstance(obj, RatFunc2):
        return format_ratfunc(obj)
    if isinstance(obj, SymForm):
        return format_form(obj)
    if isinstance(obj, PlaneMap):
        return format_map(obj)
    raise TypeError(f"cannot format {type(obj).__name__}")


# -- parsing ----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(map|dx|dy|x|y|z)|(\^|\*|/|\+|-|\(|\)|,))")


def _tokenize(text):
    pos = 0
    toks = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", bad)
        start = m.start(m.lastindex)
        if m.group(1):
            toks.append(("num", int(m.group(1)), start))
        elif m.group(2):
            toks.append(("name", m.group(2), start))
        else:
            toks.append(("op", m.group(3), start))
        pos = m.end()
    toks.append(("end", None, len(text)))
    return toks


class _Graded:
    """Polynomial in (dx, dy) with rational-function coefficients."""

    __slots__ = ("parts",)

    def __init__(self, parts):
        self.parts = {k: v for k, v in parts.items() if not v.is_zero()}

    @classmethod
    def scalar(cls, f):
        return cls({(0, 0): RatFunc2.of(f)})

    def is_scalar(self):
        return all(k == (0, 0) for k in self.parts)

    def scalar_value(self):
        return self.parts.get((0, 0), RatFunc2(0))

    def __add__(self, other):
        out = dict(self.parts)
        for k, v in other.parts.items():
            out[k] = out[k] + v if k in out else v
        return _Graded(out)

    def __neg__(self):
        return _Graded({k: -v for k, v in self.parts.items()})

    def __mul__(self, other):
        out = {}
        for (a, b), u in self.parts.items():
            for (c, d), v in other.parts.items():
                key = (a + c, b + d)
                w = u * v
                out[key] = out[key] + w if key in out else w
        return _Graded(out)


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        tok = self.take()
        if tok[0] != "op" or tok[1] != value:
            raise ParseError(f"expected {value!r}", tok[2])
        return tok

    def top(self):
        tok = self.peek()
        if tok[0] == "name" and tok[1] == "map":
            self.take()
            self.expect("(")
            f1 = self.expr()
            self.expect(",")
            f2 = self.expr()
            self.expect(")")
            end = self.peek()
            if end[0] != "end":
                raise ParseError("trailing input after map", end[2])
            for f, pos in ((f1, tok[2]), (f2, tok[2])):
                if not f.is_scalar():
                    raise ParseError("dx/dy appearing inside map coordinates", pos)
            return ("map", f1.scalar_value(), f2.scalar_value())
        value = self.expr()
        end = self.peek()
        if end[0] != "end":
            raise ParseError(f"unexpected token {end[1]!r}", end[2])
        return ("expr", value)

    def expr(self):
        left = self.term()
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] in "+-":
                self.take()
                right = self.term()
                left = left + right if tok[1] == "+" else left + (-right)
            else:
                return left

    def term(self):
        left = self.factor()
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] == "*":
                self.take()
                left = left * self.factor()
            elif tok[0] == "op" and tok[1] == "/":
                self.take()
                right = self.factor()
                if not right.is_scalar():
                    raise ParseError("division by a differential", tok[2])
                den = right.scalar_value()
                if den.is_zero():
                    raise ParseError("division by zero", tok[2])
                inv = _Graded.scalar(den.inverse())
                left = left * inv
            else:
                return left

    def factor(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            val = self.factor()
            return -val if tok[1] == "-" else val
        base = self.atom()
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "^":
            self.take()
            n = self.take()
            if n[0] != "num":
                raise ParseError("exponent must be a natural number", n[2])
            result = _Graded.scalar(1)
            for _ in range(n[1]):
                result = result * base
            return result
        return base

    def atom(self):
        tok = self.take()
        kind, val, pos = tok
        if kind == "num":
            return _Graded.scalar(Fraction(val))
        if kind == "name":
            if val in ("x", "z"):
                return _Graded.scalar(Poly2.x())
            if val == "y":
                return _Graded.scalar(Poly2.y())
            if val == "dx":
                return _Graded({(1, 0): RatFunc2(1)})
            if val == "dy":
                return _Graded({(0, 1): RatFunc2(1)})
            raise ParseError(f"unexpected {val!r}", pos)
        if kind == "op" and val == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        if kind == "end":
            raise ParseError("unexpected end of input", pos)
        raise ParseError(f"unexpected token {val!r}", pos)


def parse(text: str):
    """Parse text into a Poly2, RatFunc2, SymForm or PlaneMap.

    The letter ``z`` is accepted as an alias of ``x`` so that one-variable
    maps such as ``z^2 - 2`` can be typed naturally.
    """
    from .planemaps import PlaneMap
    from .symforms import SymForm

    result = _Parser(text).top()
    if result[0] == "map":
        return PlaneMap(result[1], result[2])
    value = result[1]
    if value.is_scalar():
        f = value.scalar_value()
        return f.as_poly() if f.is_polynomial() else f
    orders = {a + b for a, b in value.parts}
    if len(orders) != 1:
        raise ParseError("mixed form orders", 0)
    (k,) = orders
    coeffs = [value.parts.get((i, k - i), RatFunc2(0)) for i in range(k + 1)]
    den = Poly2.const(1)
    for c in coeffs:
        if not c.is_polynomial():
            den = _lcm(den, c.den)
    polys = [(c * den).as_poly() for c in coeffs]
    return SymForm(polys)


def _lcm(a, b):
    from .exactalg import lcm
    return lcm(a, b)
