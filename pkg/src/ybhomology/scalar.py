"""Exact arithmetic in the field Q(y) of rational functions in one variable.

Polynomials over the integers are represented as tuples of ints in ascending
powers of y, with no trailing zeros; the zero polynomial is the empty tuple.
A rational function is a pair (num, den) of such tuples in canonical form:

  * den is nonzero and its leading coefficient is positive,
  * gcd(num, den) = 1 in Z[y], including the integer contents.

Canonical form makes equality of values equality of representations, so
rational functions can be compared and hashed directly.  No floating point
is used anywhere.

Rational functions print as polynomials with rational coefficients when the
denominator is constant ("1 - y^2", "3/2*y^4") and as "(num)/(den)"
otherwise.  The parser accepts full expressions built from integers, `y`,
`+ - * / ^` and parentheses, so every printed form round-trips.
"""

from __future__ import annotations

import math
from fractions import Fraction


class PoleError(ArithmeticError):
    """Evaluation at a root of the denominator."""


# ---------------------------------------------------------------------------
# integer polynomials as tuples, ascending powers


def _trim(coeffs) -> tuple:
    n = len(coeffs)
    while n and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


def padd(a: tuple, b: tuple) -> tuple:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return _trim(out)


def psub(a: tuple, b: tuple) -> tuple:
    out = list(a) + [0] * (len(b) - len(a))
    for i, c in enumerate(b):
        out[i] -= c
    return _trim(out)


def pneg(a: tuple) -> tuple:
    return tuple(-c for c in a)


def pmul(a: tuple, b: tuple) -> tuple:
    if not a or not b:
        return ()
    if len(a) == 1:
        a0 = a[0]
        return b if a0 == 1 else tuple(a0 * c for c in b)
    if len(b) == 1:
        b0 = b[0]
        return a if b0 == 1 else tuple(c * b0 for c in a)
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return tuple(out)


def ppow(a: tuple, k: int) -> tuple:
    out = (1,)
    for _ in range(k):
        out = pmul(out, a)
    return out


def pcontent(a: tuple) -> int:
    g = 0
    for c in a:
        g = math.gcd(g, c)
        if g == 1:
            return 1
    return g


def pdivexact(a: tuple, b: tuple) -> tuple:
    """Quotient a // b when b divides a exactly in Z[y]."""
    if not a:
        return ()
    db = len(b) - 1
    lb = b[-1]
    rem = list(a)
    q = [0] * (len(a) - db)
    for k in range(len(a) - 1 - db, -1, -1):
        top = rem[db + k]
        if top:
            assert top % lb == 0, "inexact polynomial division"
            c = top // lb
            q[k] = c
            for i, bi in enumerate(b):
                rem[k + i] -= c * bi
    assert not any(rem), "inexact polynomial division"
    return _trim(q)


def _prem(a: tuple, b: tuple) -> tuple:
    """Pseudo-remainder of a by b (up to content, which the PRS strips)."""
    da, db = len(a) - 1, len(b) - 1
    if da < db:
        return a
    lb = b[-1]
    rem = list(a)
    for k in range(da - db, -1, -1):
        top = rem[db + k]
        if top:
            for i in range(len(rem)):
                rem[i] *= lb
            top *= lb
            c = top // lb
            for i, bi in enumerate(b):
                rem[k + i] -= c * bi
    return _trim(rem[:db])


def _pprimitive(a: tuple) -> tuple:
    c = pcontent(a)
    if c <= 1:
        return a
    return tuple(x // c for x in a)


def pgcd(a: tuple, b: tuple) -> tuple:
    """gcd in Z[y]: positive leading coefficient, content included."""
    if not a:
        return b if not b or b[-1] > 0 else pneg(b)
    if not b:
        return a if a[-1] > 0 else pneg(a)
    ca, cb = pcontent(a), pcontent(b)
    c = math.gcd(ca, cb)
    # gcd with a constant only sees the content
    if len(a) == 1 or len(b) == 1:
        return (c,)
    pa = _pprimitive(a)
    pb = _pprimitive(b)
    if len(pa) < len(pb):
        pa, pb = pb, pa
    # primitive polynomial remainder sequence
    while pb:
        r = _prem(pa, pb)
        pa, pb = pb, _pprimitive(r)
    if pa[-1] < 0:
        pa = pneg(pa)
    return pa if c == 1 else tuple(c * x for x in pa)


def peval(a: tuple, point: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * point + c
    return acc


_P1 = (1,)


# ---------------------------------------------------------------------------
# rational functions


class RatFunc:
    """A rational function in canonical reduced form.  Immutable."""

    __slots__ = ("num", "den")

    def __init__(self, num: tuple, den: tuple):
        # trusted constructor: (num, den) must already be canonical
        self.num = num
        self.den = den

    @staticmethod
    def make(num, den=_P1) -> "RatFunc":
        """Canonicalizing constructor from coefficient iterables."""
        return _make(_trim(tuple(num)), _trim(tuple(den)))

    @staticmethod
    def from_rational(q) -> "RatFunc":
        q = Fraction(q)
        if not q:
            return RF0
        return RatFunc((q.numerator,), (q.denominator,))

    # -- predicates and views ------------------------------------------------

    def is_zero(self) -> bool:
        return not self.num

    def is_constant(self) -> bool:
        return len(self.num) <= 1 and len(self.den) == 1

    def as_fraction(self) -> Fraction:
        if not (len(self.num) <= 1 and len(self.den) == 1):
            raise ValueError(f"not a constant: {self}")
        return Fraction(self.num[0] if self.num else 0, self.den[0])

    def eval_at(self, point) -> Fraction:
        point = Fraction(point)
        d = peval(self.den, point)
        if d == 0:
            raise PoleError(f"pole of {self} at y = {point}")
        return peval(self.num, point) / d

    def degrees(self) -> tuple:
        return (len(self.num) - 1, len(self.den) - 1)

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        if not other.num:
            return self
        if not self.num:
            return other
        if self.den == _P1 and other.den == _P1:
            n = padd(self.num, other.num)
            return RatFunc(n, _P1) if n else RF0
        return _make(
            padd(pmul(self.num, other.den), pmul(other.num, self.den)),
            pmul(self.den, other.den),
        )

    def __sub__(self, other):
        if not other.num:
            return self
        if self.den == _P1 and other.den == _P1:
            n = psub(self.num, other.num)
            return RatFunc(n, _P1) if n else RF0
        return _make(
            psub(pmul(self.num, other.den), pmul(other.num, self.den)),
            pmul(self.den, other.den),
        )

    def __mul__(self, other):
        an, ad = self.num, self.den
        bn, bd = other.num, other.den
        if not an or not bn:
            return RF0
        if ad == _P1 and bd == _P1:
            return RatFunc(pmul(an, bn), _P1)
        g = pgcd(an, bd)
        if g != _P1:
            an, bd = pdivexact(an, g), pdivexact(bd, g)
        g = pgcd(bn, ad)
        if g != _P1:
            bn, ad = pdivexact(bn, g), pdivexact(ad, g)
        return RatFunc(pmul(an, bn), pmul(ad, bd))

    def inv(self) -> "RatFunc":
        if not self.num:
            raise ZeroDivisionError("inverse of zero rational function")
        if self.num[-1] > 0:
            return RatFunc(self.den, self.num)
        return RatFunc(pneg(self.den), pneg(self.num))

    def __truediv__(self, other):
        return self * other.inv()

    def __neg__(self):
        return RatFunc(pneg(self.num), self.den)

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return self == RatFunc.from_rational(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"RatFunc({format_scalar(self)!r})"


def _make(num: tuple, den: tuple) -> RatFunc:
    if not den:
        raise ZeroDivisionError("zero denominator")
    if not num:
        return RF0
    g = pgcd(num, den)
    if g != _P1:
        num, den = pdivexact(num, g), pdivexact(den, g)
    if den[-1] < 0:
        num, den = pneg(num), pneg(den)
    return RatFunc(num, den)


RF0 = RatFunc((), _P1)
RF1 = RatFunc(_P1, _P1)
RF_Y = RatFunc((0, 1), _P1)


def y_power(k: int) -> RatFunc:
    return RatFunc((0,) * k + (1,), _P1)


def quantum_int(k: int) -> RatFunc:
    """1 + y^2 + ... + y^(2k-2); the empty sum for k = 0."""
    if k < 0:
        raise ValueError("quantum integer of a negative index")
    if k == 0:
        return RF0
    coeffs = [0] * (2 * k - 1)
    coeffs[0::2] = [1] * k
    return RatFunc(tuple(coeffs), _P1)


def quantum_factorial(k: int) -> RatFunc:
    """Product of the quantum integers 1..k; 1 for k = 0."""
    if k < 0:
        raise ValueError("quantum factorial of a negative index")
    out = RF1
    for j in range(2, k + 1):
        out = out * quantum_int(j)
    return out


# ---------------------------------------------------------------------------
# text format


def _format_poly(num: tuple, den_const: int = 1) -> str:
    if not num:
        return "0"
    parts = []
    for k, c in enumerate(num):
        if not c:
            continue
        q = Fraction(c, den_const)
        mag = abs(q)
        if k == 0:
            body = str(mag)
        else:
            var = "y" if k == 1 else f"y^{k}"
            body = var if mag == 1 else f"{mag}*{var}"
        if not parts:
            parts.append(body if q > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if q > 0 else f"- {body}")
    return " ".join(parts)


def format_scalar(a: RatFunc) -> str:
    if len(a.den) == 1:
        return _format_poly(a.num, a.den[0])
    return f"({_format_poly(a.num)})/({_format_poly(a.den)})"


class _Parser:
    """Recursive-descent parser for +, -, *, /, ^ expressions in y."""

    def __init__(self, text: str):
        self.text = text.replace("−", "-").replace("**", "^")
        self.pos = 0

    def error(self, msg):
        raise ValueError(f"bad scalar {self.text!r} at column {self.pos}: {msg}")

    def peek(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse(self) -> RatFunc:
        value = self.expr()
        if self.peek():
            self.error("trailing input")
        return value

    def expr(self) -> RatFunc:
        value = self.term()
        while (op := self.peek()) in ("+", "-"):
            self.pos += 1
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> RatFunc:
        value = self.factor()
        while (op := self.peek()) in ("*", "/"):
            self.pos += 1
            rhs = self.factor()
            if op == "*":
                value = value * rhs
            else:
                if not rhs.num:
                    self.error("division by zero")
                value = value / rhs
        return value

    def factor(self) -> RatFunc:
        c = self.peek()
        if c == "-":
            self.pos += 1
            return -self.factor()
        if c == "+":
            self.pos += 1
            return self.factor()
        value = self.atom()
        if self.peek() == "^":
            self.pos += 1
            exp = self.integer()
            num, den = RF1, RF1
            for _ in range(exp):
                num = num * value
            return num / den
        return value

    def atom(self) -> RatFunc:
        c = self.peek()
        if c == "(":
            self.pos += 1
            value = self.expr()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return value
        if c == "y":
            self.pos += 1
            return RF_Y
        if c.isdigit():
            return RatFunc.from_rational(self.integer())
        self.error("expected a term")

    def integer(self) -> int:
        c = self.peek()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            self.error("expected an integer")
        return int(self.text[start : self.pos])


def parse_scalar(text: str) -> RatFunc:
    """Parse a polynomial / rational-function expression in y."""
    return _Parser(text).parse()
