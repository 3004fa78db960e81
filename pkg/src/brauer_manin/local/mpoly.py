"""Sparse multivariate polynomials over Q with exact and interval evaluation."""
from __future__ import annotations

import ast
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Monomial = tuple[int, ...]


class ExpressionError(ValueError):
    pass


class MPoly:
    """``terms`` maps exponent tuples (one entry per variable) to nonzero Fractions."""

    __slots__ = ("vars", "terms")

    def __init__(self, variables: Sequence[str], terms: Mapping[Monomial, Fraction] = ()):
        self.vars = tuple(variables)
        n = len(self.vars)
        clean = {}
        for m, c in dict(terms).items():
            c = Fraction(c)
            if len(m) != n:
                raise ExpressionError(f"monomial {m} does not match variables {self.vars}")
            if c:
                clean[tuple(m)] = clean.get(tuple(m), 0) + c
        self.terms = {m: c for m, c in sorted(clean.items()) if c}

    @classmethod
    def const(cls, variables, c) -> "MPoly":
        return cls(variables, {(0,) * len(variables): Fraction(c)})

    @classmethod
    def var(cls, variables, name: str) -> "MPoly":
        i = list(variables).index(name)
        return cls(variables, {tuple(int(j == i) for j in range(len(variables))): Fraction(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def _same(self, other):
        if isinstance(other, MPoly):
            if other.vars != self.vars:
                raise ExpressionError("polynomials use different variables")
            return other
        return MPoly.const(self.vars, other)

    def __add__(self, other):
        other = self._same(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            t[m] = t.get(m, 0) + c
        return MPoly(self.vars, t)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.vars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._same(other))

    def __rsub__(self, other):
        return self._same(other) - self

    def __mul__(self, other):
        other = self._same(other)
        t: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                t[m] = t.get(m, 0) + c1 * c2
        return MPoly(self.vars, t)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ExpressionError("negative powers of polynomials")
        out = MPoly.const(self.vars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        return isinstance(other, MPoly) and self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, tuple(self.terms.items())))

    @property
    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=0)

    def derivative(self, i: int) -> "MPoly":
        t = {}
        for m, c in self.terms.items():
            if m[i]:
                mm = list(m)
                mm[i] -= 1
                t[tuple(mm)] = c * m[i]
        return MPoly(self.vars, t)

    def gradient(self) -> list["MPoly"]:
        return [self.derivative(i) for i in range(len(self.vars))]

    def substitute(self, variables: Sequence[str], images: Mapping[str, "MPoly"]) -> "MPoly":
        """Replace each variable by a polynomial in ``variables``."""
        out = MPoly(variables)
        for m, c in self.terms.items():
            term = MPoly.const(variables, c)
            for name, e in zip(self.vars, m):
                if e:
                    term = term * images[name] ** e
            out = out + term
        return out

    def denominator_lcm(self) -> int:
        from math import lcm

        return lcm(*(c.denominator for c in self.terms.values())) if self.terms else 1

    def integer_scaled(self) -> "MPoly":
        d = self.denominator_lcm()
        return MPoly(self.vars, {m: c * d for m, c in self.terms.items()})

    def __call__(self, point: Sequence) -> Fraction:
        acc = Fraction(0)
        for m, c in self.terms.items():
            v = c
            for x, e in zip(point, m):
                if e:
                    v *= x**e
            acc += v
        return acc

    def eval_int(self, point: Sequence[int]) -> int:
        """Exact value at integers; coefficients must be integers."""
        acc = 0
        for m, c in self.terms.items():
            v = c.numerator
            for x, e in zip(point, m):
                if e:
                    v *= x**e
            acc += v
        return acc

    def interval(self, box: Sequence[tuple[Fraction, Fraction]]) -> tuple[Fraction, Fraction]:
        """Enclosure of the values over a box (naive monomial-wise bounds)."""
        lo = hi = Fraction(0)
        for m, c in self.terms.items():
            a = b = Fraction(1)
            for (l, h), e in zip(box, m):
                if e:
                    pl, ph = _ipow(l, h, e)
                    cand = (a * pl, a * ph, b * pl, b * ph)
                    a, b = min(cand), max(cand)
            if c > 0:
                lo += c * a
                hi += c * b
            else:
                lo += c * b
                hi += c * a
        return lo, hi

    def __str__(self):
        return format_mpoly(self)

    def __repr__(self):
        return f"MPoly({self.vars}, {format_mpoly(self)!r})"


def _ipow(l: Fraction, h: Fraction, e: int) -> tuple[Fraction, Fraction]:
    a, b = l**e, h**e
    if e % 2 == 0 and l <= 0 <= h:
        return Fraction(0), max(a, b)
    return min(a, b), max(a, b)


def format_mpoly(f: MPoly) -> str:
    if f.is_zero():
        return "0"
    parts = []
    for m, c in sorted(f.terms.items(), key=lambda mc: (-sum(mc[0]), tuple(-e for e in mc[0]))):
        mono = "*".join(v if e == 1 else f"{v}^{e}" for v, e in zip(f.vars, m) if e)
        mag = abs(c)
        if mono:
            coef = "" if mag == 1 else f"{mag}*"
            body = coef + mono
        else:
            body = str(mag)
        parts.append(("-" if c < 0 else "+", body))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for s, b in parts[1:]:
        out += f" {s} {b}"
    return out


# ------------------------------------------------------------ parsing


class _Frac:
    """Numerator/denominator pair of polynomials produced by the parser."""

    def __init__(self, num: MPoly, den: MPoly):
        self.num, self.den = num, den


def parse_expression(text: str, variables: Sequence[str]) -> tuple[MPoly, MPoly]:
    """Parse ``+ - * / ^ **`` expressions into a (numerator, denominator) pair."""
    src = text.strip().replace("^", "**")
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise ExpressionError(f"cannot parse {text!r}: {exc.msg}") from None
    variables = tuple(variables)
    one = MPoly.const(variables, 1)

    def walk(node) -> _Frac:
        if isinstance(node, ast.Expression):
            return walk(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
            return _Frac(MPoly.const(variables, node.value), one)
        if isinstance(node, ast.Name):
            if node.id not in variables:
                raise ExpressionError(f"unknown variable {node.id!r} in {text!r}")
            return _Frac(MPoly.var(variables, node.id), one)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            a = walk(node.operand)
            return _Frac(-a.num, a.den) if isinstance(node.op, ast.USub) else a
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)):
                    raise ExpressionError(f"exponents must be integer literals in {text!r}")
                k = node.right.value
                a = walk(node.left)
                if k >= 0:
                    return _Frac(a.num**k, a.den**k)
                if a.num.is_zero():
                    raise ExpressionError(f"division by zero in {text!r}")
                return _Frac(a.den ** (-k), a.num ** (-k))
            a, b = walk(node.left), walk(node.right)
            if isinstance(node.op, ast.Add):
                return _Frac(a.num * b.den + b.num * a.den, a.den * b.den)
            if isinstance(node.op, ast.Sub):
                return _Frac(a.num * b.den - b.num * a.den, a.den * b.den)
            if isinstance(node.op, ast.Mult):
                return _Frac(a.num * b.num, a.den * b.den)
            if isinstance(node.op, ast.Div):
                if b.num.is_zero():
                    raise ExpressionError(f"division by zero in {text!r}")
                return _Frac(a.num * b.den, a.den * b.num)
        raise ExpressionError(f"unsupported syntax in {text!r}")

    out = walk(tree)
    if out.den.is_zero():
        raise ExpressionError(f"division by zero in {text!r}")
    return out.num, out.den


def parse_polynomial(text: str, variables: Sequence[str]) -> MPoly:
    num, den = parse_expression(text, variables)
    if den.degree != 0:
        raise ExpressionError(f"{text!r} is not a polynomial")
    c = next(iter(den.terms.values()))
    return MPoly(num.vars, {m: v / c for m, v in num.terms.items()})


def equation_polynomial(text: str, variables: Sequence[str]) -> MPoly:
    """``lhs = rhs`` becomes ``lhs - rhs``; a bare expression is taken as ``= 0``."""
    if text.count("=") > 1:
        raise ExpressionError(f"more than one '=' in {text!r}")
    if "=" in text:
        lhs, rhs = text.split("=")
        return parse_polynomial(lhs, variables) - parse_polynomial(rhs, variables)
    return parse_polynomial(text, variables)


def square_class_polynomial(text: str, variables: Sequence[str]) -> MPoly:
    """A polynomial in the same square class as the rational expression: ``num * den``."""
    num, den = parse_expression(text, variables)
    out = num * den
    if out.is_zero():
        raise ExpressionError(f"{text!r} is identically zero")
    return out
