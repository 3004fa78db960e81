"""Cyclic mu_n-covers of open subsets of the projective line over Q.

For ``C = P^1 minus Y`` a tuple ``(a_y)`` in ``(Z/n)^Y`` is the branch data of
a geometric mu_n-torsor on C iff ``n * D ~ sum a_y [y]`` for some divisor D;
on P^1 linear equivalence is the degree, so the test is
``sum a_y deg(y) = 0 mod n``.  A realizing cover is ``w^n = r`` with ``r`` a
product of the place polynomials.  Constant twists ``r -> c r`` with
``c`` in ``Q^*/Q^*n`` give the same branch data and are listed separately.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping, Optional, Sequence

import sympy

from .exact.padic import rational_nth_root
from .exact.places import PlaceP1, valuation_at
from .exact.poly import Poly, RationalFunction, poly_xgcd


class KummerError(ValueError):
    pass


@dataclass(frozen=True)
class OpenCurveP1:
    removed: tuple[PlaceP1, ...]

    def __post_init__(self):
        rem = tuple(self.removed)
        if not rem:
            raise KummerError("at least one place must be removed")
        if len(set(rem)) != len(rem):
            raise KummerError("removed places must be distinct")
        object.__setattr__(self, "removed", rem)

    @classmethod
    def parse(cls, places: Iterable[str]) -> "OpenCurveP1":
        return cls(tuple(PlaceP1.parse(s) for s in places))

    @property
    def total_degree(self) -> int:
        return sum(y.degree for y in self.removed)


@dataclass(frozen=True)
class ResidueTuple:
    residues: tuple[int, ...]  # aligned with OpenCurveP1.removed
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise KummerError("modulus must be positive")
        object.__setattr__(self, "residues", tuple(int(a) % self.n for a in self.residues))

    def __add__(self, other: "ResidueTuple") -> "ResidueTuple":
        if other.n != self.n or len(other.residues) != len(self.residues):
            raise KummerError("tuples of different shapes")
        return ResidueTuple(tuple(a + b for a, b in zip(self.residues, other.residues)), self.n)

    def __neg__(self) -> "ResidueTuple":
        return ResidueTuple(tuple(-a for a in self.residues), self.n)


def _check_shape(C: OpenCurveP1, t: ResidueTuple):
    if len(t.residues) != len(C.removed):
        raise KummerError(f"tuple has {len(t.residues)} entries for {len(C.removed)} removed places")


def realizable_residue_tuple(C: OpenCurveP1, t: ResidueTuple) -> bool:
    _check_shape(C, t)
    return sum(a * y.degree for a, y in zip(t.residues, C.removed)) % t.n == 0


@dataclass(frozen=True)
class KummerCover:
    r: RationalFunction
    n: int
    curve: OpenCurveP1
    branch: tuple[int, ...]  # order of r at each removed place, mod n

    def twist(self, c) -> "KummerCover":
        """The cover ``w^n = c r``; same branch data, different torsor over Q."""
        c = Fraction(c)
        if c == 0:
            raise KummerError("twist by zero")
        return KummerCover(self.r * RationalFunction(Poly.const(c)), self.n, self.curve, self.branch)


def branch_data(r: RationalFunction, C: OpenCurveP1, n: int) -> tuple[int, ...]:
    return tuple(valuation_at(r, y) % n for y in C.removed)


def build_kummer_cover(C: OpenCurveP1, t: ResidueTuple) -> KummerCover:
    """``r = prod pi_y^{b_y}`` over finite removed places, ``b_y`` the least residue of ``a_y``.

    This is the polynomial of least degree with the required orders; the
    order at infinity then matches by the degree condition.
    """
    if not realizable_residue_tuple(C, t):
        raise KummerError("tuple is not realizable: sum of a_y deg(y) is not divisible by n")
    num = Poly.const(1)
    for a, y in zip(t.residues, C.removed):
        if not y.is_infinite and a:
            num = num * y.poly**a
    r = RationalFunction(num)
    cover = KummerCover(r, t.n, C, branch_data(r, C, t.n))
    if cover.branch != t.residues:
        raise KummerError("internal error: branch data differs from the requested tuple")
    # etale away from the removed places
    if PlaceP1.infinity() not in C.removed and valuation_at(r, PlaceP1.infinity()) % t.n:
        raise KummerError("internal error: cover ramifies at infinity")
    return cover


def enumerate_realizable(C: OpenCurveP1, n: int) -> list[ResidueTuple]:
    """All realizable tuples, in lexicographic order."""
    out = []
    for res in product(range(n), repeat=len(C.removed)):
        t = ResidueTuple(res, n)
        if realizable_residue_tuple(C, t):
            out.append(t)
    return out


# ------------------------------------------------------------ tame residues


@dataclass(frozen=True)
class ResidueClass:
    """Class of the tame symbol in the residue field at ``place`` modulo n-th powers."""

    place: PlaceP1
    value: Poly  # element of Q[t]/(pi), reduced; a constant at infinity
    n: int
    trivial: bool


def _unit_value(c: RationalFunction, y: PlaceP1) -> Poly:
    """Image of a unit at y in its residue field."""
    if y.is_infinite:
        if c.num.degree != c.den.degree:
            raise KummerError("not a unit at infinity")
        return Poly.const(c.num.lc / c.den.lc)
    pi = y.poly
    a, b = c.num % pi, c.den % pi
    if b.is_zero() or a.is_zero():
        raise KummerError(f"not a unit at {y}")
    g, s, _ = poly_xgcd(b, pi)
    inv = s * Poly.const(1 / g.lc)
    return (a * inv) % pi


def is_nth_power_in_residue_field(a: Poly, y: PlaceP1, n: int) -> bool:
    if y.is_infinite or y.degree == 1:
        if y.is_infinite:
            val = a.coeffs[0] if a.coeffs else Fraction(0)
        else:
            val = a(-y.poly.coeffs[0])
        return rational_nth_root(val, n) is not None
    T, X = sympy.symbols("t X")
    th = sympy.CRootOf(sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(y.poly.coeffs)], T), 0)
    K = sympy.QQ.algebraic_field(th)
    expr = sum(sympy.Rational(c.numerator, c.denominator) * th**i for i, c in enumerate(a.coeffs))
    P = sympy.Poly(X**n - expr, X, domain=K)
    return any(f.degree() == 1 for f, _ in P.factor_list()[1])


def faddeev_residue(f: RationalFunction, g: RationalFunction, y: PlaceP1, n: int = 2) -> ResidueClass:
    """``(-1)^{v(f) v(g)} f^{v(g)} / g^{v(f)}`` in the residue field at y, modulo n-th powers."""
    f, g = RationalFunction.coerce(f), RationalFunction.coerce(g)
    if f.is_zero() or g.is_zero():
        raise KummerError("tame residue of zero")
    vf, vg = valuation_at(f, y), valuation_at(g, y)
    c = f**vg / g**vf
    if (vf * vg) % 2:
        c = -c
    val = _unit_value(c, y)
    return ResidueClass(y, val, n, is_nth_power_in_residue_field(val, y, n))


# ------------------------------------------------------------ brute force


def brute_force_realizable(C: OpenCurveP1, n: int, max_degree: int = 6) -> set[tuple[int, ...]]:
    """Branch tuples of all ``r`` built from removed place polynomials with degree <= max_degree.

    Exponents range over ``-(n-1)..(n-1)``; orders are measured on the
    expanded rational function, and ``r`` must be unramified at infinity
    when infinity is not removed.
    """
    finite = [y for y in C.removed if not y.is_infinite]
    inf = PlaceP1.infinity()
    powers = {}
    for y in finite:
        for e in range(n):
            powers[(y, e)] = y.poly**e
    found = set()
    for exps in product(range(-(n - 1), n), repeat=len(finite)):
        dn = sum(e * y.degree for e, y in zip(exps, finite) if e > 0)
        dd = sum(-e * y.degree for e, y in zip(exps, finite) if e < 0)
        if max(dn, dd) > max_degree:
            continue
        num, den = Poly.const(1), Poly.const(1)
        for e, y in zip(exps, finite):
            if e > 0:
                num = num * powers[(y, e)]
            elif e < 0:
                den = den * powers[(y, -e)]
        r = RationalFunction(num, den)
        if inf not in C.removed and valuation_at(r, inf) % n:
            continue
        found.add(branch_data(r, C, n))
    return found
