"""Places of Q and of the rational function field Q(t), factorization and divisors."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from typing import Optional, Union

import sympy

from .poly import Poly, RationalFunction, format_poly, parse_poly

MAX_FACTOR_DEGREE = 12

INF = "inf"
PlaceQ = Union[int, str]  # a prime p, or INF


def is_prime(p: int) -> bool:
    return isinstance(p, int) and p >= 2 and bool(sympy.isprime(p))


def check_place_q(v) -> PlaceQ:
    if v == INF:
        return INF
    if isinstance(v, int) and is_prime(v):
        return v
    raise ValueError(f"not a place of Q: {v!r}")


def parse_place_q(text: str) -> PlaceQ:
    text = text.strip()
    if text.lower() in ("inf", "oo", "infinity", "∞"):
        return INF
    return check_place_q(int(text))


_T = sympy.Symbol("t")


def _to_sympy(f: Poly):
    return sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(f.coeffs)], _T, domain="QQ")


def _from_sympy(p) -> Poly:
    coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(p.all_coeffs())]
    return Poly(coeffs)


def factor_polynomial(f: Poly) -> tuple[Fraction, list[tuple[Poly, int]]]:
    """Factor ``f`` over Q into monic irreducibles.

    Returns ``(leading_coefficient, [(factor, multiplicity), ...])`` with the
    factors sorted (degree, then coefficients).
    """
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    if f.degree > MAX_FACTOR_DEGREE:
        raise ValueError(f"degree {f.degree} exceeds the factorization cap {MAX_FACTOR_DEGREE}")
    lc = f.lc
    if f.degree == 0:
        return lc, []
    return lc, list(_factor_monic(f.monic()))


@lru_cache(maxsize=4096)
def _factor_monic(f: Poly) -> tuple[tuple[Poly, int], ...]:
    _, facs = _to_sympy(f).factor_list()
    out = [(_from_sympy(p).monic(), int(m)) for p, m in facs]
    out.sort(key=lambda pm: pm[0])
    return tuple(out)


def is_irreducible(f: Poly) -> bool:
    if f.degree < 1:
        return False
    _, facs = factor_polynomial(f)
    return len(facs) == 1 and facs[0][1] == 1


@dataclass(frozen=True)
class PlaceP1:
    """Closed point of the projective t-line over Q: a monic irreducible polynomial, or infinity."""

    poly: Optional[Poly] = None

    def __post_init__(self):
        if self.poly is not None:
            if self.poly.lc != 1:
                raise ValueError("place polynomial must be monic")
            if not is_irreducible(self.poly):
                raise ValueError(f"{self.poly} is not irreducible over Q")

    @classmethod
    def infinity(cls) -> "PlaceP1":
        return cls(None)

    @classmethod
    def parse(cls, text: str) -> "PlaceP1":
        text = text.strip()
        if text in ("inf", "oo", "∞"):
            return cls(None)
        return cls(parse_poly(text).monic())

    @property
    def is_infinite(self) -> bool:
        return self.poly is None

    @property
    def degree(self) -> int:
        return 1 if self.poly is None else self.poly.degree

    def sort_key(self):
        return (1, ()) if self.poly is None else (0, (self.poly.degree, tuple(reversed(self.poly.coeffs))))

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __str__(self):
        return "inf" if self.poly is None else format_poly(self.poly)


def poly_valuation(f: Poly, pi: Poly) -> int:
    """Multiplicity of the irreducible ``pi`` in nonzero ``f``."""
    if f.is_zero():
        raise ValueError("valuation of zero")
    v = 0
    while True:
        q, r = divmod(f, pi)
        if not r.is_zero():
            return v
        f, v = q, v + 1


def valuation_at(r: RationalFunction, y: PlaceP1) -> int:
    if r.is_zero():
        raise ValueError("valuation of the zero function")
    if y.is_infinite:
        return r.den.degree - r.num.degree
    return poly_valuation(r.num, y.poly) - poly_valuation(r.den, y.poly)


def divisor_of_function(r: RationalFunction) -> dict[PlaceP1, int]:
    """Divisor of a nonzero rational function; places with order 0 are omitted."""
    if r.is_zero():
        raise ValueError("the zero function has no divisor")
    div: dict[PlaceP1, int] = {}
    for part, sign in ((r.num, 1), (r.den, -1)):
        _, facs = factor_polynomial(part)
        for q, m in facs:
            y = PlaceP1(q)
            div[y] = div.get(y, 0) + sign * m
    at_inf = r.den.degree - r.num.degree
    if at_inf:
        div[PlaceP1.infinity()] = at_inf
    return {y: div[y] for y in sorted(div) if div[y]}


def divisor_degree(div: dict[PlaceP1, int]) -> int:
    return sum(m * y.degree for y, m in div.items())
