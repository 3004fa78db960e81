"""Univariate polynomials and rational functions over Q in the variable t."""
from __future__ import annotations

import re
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Union

Number = Union[int, Fraction]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot coerce {x!r} to a rational")


@total_ordering
class Poly:
    """Polynomial with rational coefficients, stored lowest degree first.

    Trailing zeros are stripped, so the zero polynomial has ``coeffs == ()``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def t(cls) -> "Poly":
        return cls((0, 1))

    @classmethod
    def const(cls, c) -> "Poly":
        return cls((c,))

    @classmethod
    def coerce(cls, x) -> "Poly":
        return x if isinstance(x, Poly) else cls((x,))

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_const(self) -> bool:
        return len(self.coeffs) <= 1

    def monic(self) -> "Poly":
        if self.is_zero():
            raise ZeroDivisionError("zero polynomial has no monic associate")
        lc = self.lc
        return Poly(c / lc for c in self.coeffs)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly((other,))
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __lt__(self, other: "Poly"):
        # degree first, then coefficients from the top
        return (self.degree, tuple(reversed(self.coeffs))) < (
            other.degree,
            tuple(reversed(other.coeffs)),
        )

    def __hash__(self):
        return hash(("Poly", self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    def __add__(self, other):
        other = Poly.coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return Poly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-Poly.coerce(other))

    def __rsub__(self, other):
        return Poly.coerce(other) - self

    def __mul__(self, other):
        other = Poly.coerce(other)
        if self.is_zero() or other.is_zero():
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result, base = Poly.const(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other):
        other = Poly.coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        q = [Fraction(0)] * max(len(rem) - dq, 0)
        lc = other.lc
        for i in range(len(rem) - 1, dq - 1, -1):
            c = rem[i] / lc
            if c:
                q[i - dq] = c
                for j, b in enumerate(other.coeffs):
                    rem[i - dq + j] -= c * b
        return Poly(q), Poly(rem[:dq] if dq > 0 else [])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "Poly":
        return Poly(i * c for i, c in enumerate(self.coeffs) if i)

    def content(self) -> Fraction:
        """Positive rational c with self / c primitive in Z[t]."""
        from math import gcd, lcm

        if self.is_zero():
            return Fraction(0)
        den = 1
        for c in self.coeffs:
            den = lcm(den, c.denominator)
        g = 0
        for c in self.coeffs:
            g = gcd(g, int(c * den))
        return Fraction(g, den)

    def integer_coeffs(self) -> tuple[int, ...]:
        """Coefficients of the primitive integer associate with positive leading coefficient."""
        c = self.content()
        if self.lc < 0:
            c = -c
        return tuple(int(x / c) for x in self.coeffs)

    def __repr__(self):
        return f"Poly({format_poly(self)!r})"

    def __str__(self):
        return format_poly(self)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd; gcd(0, 0) = 0."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def poly_xgcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """Return (g, s, u) with s*a + u*b = g monic."""
    r0, r1 = a, b
    s0, s1 = Poly.const(1), Poly()
    u0, u1 = Poly(), Poly.const(1)
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        u0, u1 = u1, u0 - q * u1
    inv = 1 / r0.lc
    return r0 * inv, s0 * inv, u0 * inv


class RationalFunction:
    """Reduced quotient num/den with den monic."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = Poly.coerce(num)
        den = Poly.const(1) if den is None else Poly.coerce(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        g = poly_gcd(num, den)
        if not g.is_zero() and g.degree > 0:
            num, den = num // g, den // g
        lc = den.lc
        self.num = Poly(c / lc for c in num.coeffs)
        self.den = Poly(c / lc for c in den.coeffs)

    @classmethod
    def coerce(cls, x) -> "RationalFunction":
        return x if isinstance(x, RationalFunction) else cls(x)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Poly)):
            other = RationalFunction(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash(("RF", self.num, self.den))

    def __mul__(self, other):
        other = RationalFunction.coerce(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = RationalFunction.coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return RationalFunction.coerce(other) / self

    def __add__(self, other):
        other = RationalFunction.coerce(other)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-RationalFunction.coerce(other))

    def __rsub__(self, other):
        return RationalFunction.coerce(other) - self

    def __pow__(self, k: int):
        if k >= 0:
            return RationalFunction(self.num**k, self.den**k)
        return RationalFunction(self.den ** (-k), self.num ** (-k))

    def __call__(self, x):
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError("pole")
        return Fraction(self.num(x)) / d

    def __repr__(self):
        return f"RationalFunction({format_rational_function(self)!r})"

    def __str__(self):
        return format_rational_function(self)


# ---------------------------------------------------------------- text form


def _fmt_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_poly(p: Poly, var: str = "t") -> str:
    if p.is_zero():
        return "0"
    parts = []
    for i in range(p.degree, -1, -1):
        c = p.coeffs[i]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if i == 0:
            body = _fmt_coeff(a)
        else:
            mon = var if i == 1 else f"{var}^{i}"
            body = mon if a == 1 else f"{_fmt_coeff(a)}*{mon}"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def format_rational_function(r: RationalFunction, var: str = "t") -> str:
    if r.den == Poly.const(1):
        return format_poly(r.num, var)
    return f"({format_poly(r.num, var)})/({format_poly(r.den, var)})"


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(\S))")


class _Parser:
    def __init__(self, text: str, var: str):
        self.toks = []
        for m in _TOKEN.finditer(text):
            if m.group(1):
                self.toks.append(("num", int(m.group(1))))
            elif m.group(2):
                self.toks.append(("name", m.group(2)))
            elif m.group(3):
                self.toks.append(("op", m.group(3)))
        self.i = 0
        self.var = var
        self.text = text

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            raise ValueError(f"unexpected token {tok[1]!r} in {self.text!r}")
        self.i += 1
        return tok

    def expr(self) -> RationalFunction:
        neg = False
        if self.peek() == ("op", "-"):
            self.take()
            neg = True
        elif self.peek() == ("op", "+"):
            self.take()
        acc = self.term()
        if neg:
            acc = -acc
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> RationalFunction:
        acc = self.power()
        while True:
            tok = self.peek()
            if tok in (("op", "*"), ("op", "/")):
                self.take()
                rhs = self.power()
                acc = acc * rhs if tok[1] == "*" else acc / rhs
            elif tok[0] in ("num", "name") or tok == ("op", "("):
                acc = acc * self.power()  # implicit multiplication, e.g. 3t
            else:
                return acc

    def power(self) -> RationalFunction:
        base = self.atom()
        if self.peek() in (("op", "^"),):
            self.take()
            neg = False
            if self.peek() == ("op", "-"):
                self.take()
                neg = True
            k = self.take("num")[1]
            return base ** (-k if neg else k)
        return base

    def atom(self) -> RationalFunction:
        kind, val = self.peek()
        if kind == "num":
            self.take()
            return RationalFunction(val)
        if kind == "name":
            if val != self.var:
                raise ValueError(f"unknown variable {val!r} (expected {self.var!r})")
            self.take()
            return RationalFunction(Poly.t())
        if (kind, val) == ("op", "("):
            self.take()
            e = self.expr()
            self.take("op", ")")
            return e
        raise ValueError(f"unexpected token {val!r} in {self.text!r}")


def parse_rational_function(text: str, var: str = "t") -> RationalFunction:
    p = _Parser(text, var)
    r = p.expr()
    if p.i != len(p.toks):
        raise ValueError(f"trailing input in {text!r}")
    return r


def parse_poly(text: str, var: str = "t") -> Poly:
    r = parse_rational_function(text, var)
    if r.den != Poly.const(1):
        raise ValueError(f"{text!r} is not a polynomial")
    return r.num
