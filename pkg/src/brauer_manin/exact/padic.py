"""Valuations, unit residues and square classes of rationals at a place of Q."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .places import INF, PlaceQ, check_place_q


def int_valuation(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of zero")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def valuation(a, p: int) -> int:
    a = Fraction(a)
    return int_valuation(a.numerator, p) - int_valuation(a.denominator, p)


def unit_part(a, p: int) -> Fraction:
    a = Fraction(a)
    v = valuation(a, p)
    return a / Fraction(p) ** v


def legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def is_padic_unit_square(u, p: int) -> bool:
    """Whether the p-adic unit ``u`` (a rational of valuation 0) is a square in Z_p."""
    u = Fraction(u)
    r = u.numerator * pow(u.denominator, -1, 8 if p == 2 else p) % (8 if p == 2 else p)
    if p == 2:
        return r == 1
    return legendre(r, p) == 1


@dataclass(frozen=True)
class PadicDecomposition:
    place: PlaceQ
    valuation: int  # 0 at the real place
    unit_residue: int  # u mod p^k; at the real place, the sign (+1 / -1)
    modulus: int  # p^k; 0 at the real place
    square_class: bool  # unit part a square in Z_p (resp. a > 0 in R)


def padic_decompose(a, v: PlaceQ, k: int = 1) -> PadicDecomposition:
    """Write ``a = p^valuation * u`` and report ``u mod p^k`` and its square class.

    The square class of a unit is decided from the residue: mod p for odd
    p, mod 8 for p = 2, so ``k >= 3`` is required at 2.
    """
    a = Fraction(a)
    if a == 0:
        raise ValueError("padic_decompose of zero")
    v = check_place_q(v)
    if v == INF:
        s = 1 if a > 0 else -1
        return PadicDecomposition(INF, 0, s, 0, s > 0)
    if k < 1:
        raise ValueError("precision exponent must be >= 1")
    if v == 2 and k < 3:
        raise ValueError("square classes at 2 need precision 2^3; got k=%d" % k)
    p = v
    val = valuation(a, p)
    u = a / Fraction(p) ** val
    mod = p**k
    res = u.numerator * pow(u.denominator, -1, mod) % mod
    if p == 2:
        sq = res % 8 == 1
    else:
        sq = legendre(res, p) == 1
    return PadicDecomposition(p, val, res, mod, sq)


def square_free_part(n: int) -> int:
    """Signed square-free kernel of a nonzero integer."""
    import sympy

    if n == 0:
        raise ValueError("zero has no square class")
    sign = -1 if n < 0 else 1
    out = 1
    for q, e in sympy.factorint(abs(n)).items():
        if e % 2:
            out *= q
    return sign * out


def rational_square_class(a) -> int:
    """Square-free integer d with a = d * (rational square)."""
    a = Fraction(a)
    return square_free_part(a.numerator * a.denominator)


def is_rational_square(a) -> bool:
    a = Fraction(a)
    if a < 0:
        return False
    from math import isqrt

    n, d = a.numerator, a.denominator
    return isqrt(n) ** 2 == n and isqrt(d) ** 2 == d


def rational_nth_root(a, n: int) -> Optional[Fraction]:
    """Exact rational n-th root of ``a`` if one exists."""
    a = Fraction(a)
    if a == 0:
        return Fraction(0)
    sign = 1
    if a < 0:
        if n % 2 == 0:
            return None
        sign, a = -1, -a

    def iroot(m: int) -> Optional[int]:
        lo, hi = 0, 1
        while hi**n <= m:
            hi *= 2
        while lo < hi - 1:
            mid = (lo + hi) // 2
            if mid**n <= m:
                lo = mid
            else:
                hi = mid
        return lo if lo**n == m else None

    rn, rd = iroot(a.numerator), iroot(a.denominator)
    if rn is None or rd is None:
        return None
    return sign * Fraction(rn, rd)
