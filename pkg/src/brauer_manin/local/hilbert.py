"""Hilbert symbols over Q, valued in {0, 1/2} inside Q/Z.

Two independent routes:

* ``mode="formula"``: the valuation and square-class case analysis (odd p
  through Legendre symbols, p = 2 through the residues mod 8, signs at inf);
* ``mode="oracle"``: a search for a primitive zero of ``a x^2 + b y^2 - z^2``
  over residue classes, accepted only with a Hensel certificate.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from ..exact.padic import legendre, valuation
from ..exact.places import INF, PlaceQ, check_place_q

ZERO = Fraction(0)
HALF = Fraction(1, 2)


def _nonzero(a) -> Fraction:
    a = Fraction(a)
    if a == 0:
        raise ValueError("Hilbert symbol of zero")
    return a


def _split(a: Fraction, p: int) -> tuple[int, int]:
    """``a = p^alpha * u`` with u a p-adic unit given as an integer residue mod p^3."""
    alpha = valuation(a, p)
    u = a / Fraction(p) ** alpha
    mod = p**3
    return alpha, u.numerator * pow(u.denominator, -1, mod) % mod


def hilbert_formula(a, b, v: PlaceQ) -> Fraction:
    a, b = _nonzero(a), _nonzero(b)
    v = check_place_q(v)
    if v == INF:
        return HALF if a < 0 and b < 0 else ZERO
    p = v
    alpha, u = _split(a, p)
    beta, w = _split(b, p)
    if p != 2:
        s = (-1) ** (alpha * beta * ((p - 1) // 2))
        s *= legendre(u, p) ** beta * legendre(w, p) ** alpha
        return ZERO if s == 1 else HALF
    eps = lambda x: ((x - 1) // 2) % 2  # noqa: E731
    omega = lambda x: ((x * x - 1) // 8) % 2  # noqa: E731
    e = eps(u) * eps(w) + alpha * omega(w) + beta * omega(u)
    return ZERO if e % 2 == 0 else HALF


# ------------------------------------------------------------ oracle


def _reduce_for_oracle(a: Fraction, p: int) -> int:
    """Integer ``p^(v mod 2) * (u mod p^e)`` in the same square class as ``a`` at p."""
    alpha = valuation(a, p)
    u = a / Fraction(p) ** alpha
    e = 3 if p == 2 else 1
    mod = p**e
    r = u.numerator * pow(u.denominator, -1, mod) % mod
    # a unit that is 1 mod p (odd p) or 1 mod 8 is a square, so r stands for u
    return r * p ** (alpha % 2)


def _val(n: int, p: int) -> int:
    if n == 0:
        return 10**9
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@lru_cache(maxsize=None)
def _isotropic(a: int, b: int, p: int) -> bool:
    """Whether ``a x^2 + b y^2 = z^2`` has a certified primitive p-adic zero.

    Residue-tree search over the three affine charts (z = 1, y = 1, x = 1
    with the remaining coordinates in Z_p), refining a class only while it
    may still contain a zero.  With the entries reduced to valuation 0 or 1,
    depth 3 (odd p) or 5 (p = 2) is enough for a certificate to exist.
    """
    depth = 5 if p == 2 else 3

    def F(x, y, z):
        return a * x * x + b * y * y - z * z

    def certified(x, y, z) -> bool:
        f = F(x, y, z)
        s = min(_val(2 * a * x, p), _val(2 * b * y, p), _val(2 * z, p))
        return s < 10**9 and _val(f, p) > 2 * s

    charts = (
        lambda s, t: (s, t, 1),
        lambda s, t: (s, 1, t),
        lambda s, t: (1, s, t),
    )
    for chart in charts:
        stack = [(0, 0, 0)]
        while stack:
            s0, t0, j = stack.pop()
            pt = chart(s0, t0)
            f = F(*pt)
            if f != 0 and _val(f, p) < j:
                continue
            if certified(*pt):
                return True
            if j >= depth:
                continue
            step = p**j
            for ds in range(p):
                for dt in range(p):
                    stack.append((s0 + ds * step, t0 + dt * step, j + 1))
    return False


def hilbert_oracle(a, b, v: PlaceQ) -> Fraction:
    a, b = _nonzero(a), _nonzero(b)
    v = check_place_q(v)
    if v == INF:
        # z^2 = a x^2 + b y^2 over R: a nonzero solution iff a or b is positive
        return ZERO if (a > 0 or b > 0) else HALF
    p = v
    return ZERO if _isotropic(_reduce_for_oracle(a, p), _reduce_for_oracle(b, p), p) else HALF


def hilbert_symbol(a, b, v: PlaceQ, mode: str = "formula") -> Fraction:
    """Invariant of the quaternion algebra (a, b) at v: 0 if split, 1/2 otherwise."""
    if mode == "formula":
        return hilbert_formula(a, b, v)
    if mode == "oracle":
        return hilbert_oracle(a, b, v)
    raise ValueError(f"unknown mode {mode!r}")


def bad_places(a, b) -> list[PlaceQ]:
    """Places where (a, b) can be nonsplit: inf, 2 and primes dividing numerators or denominators."""
    import sympy

    a, b = _nonzero(a), _nonzero(b)
    primes = {2}
    for n in (a.numerator, a.denominator, b.numerator, b.denominator):
        primes.update(sympy.factorint(abs(n)).keys())
    return sorted(primes) + [INF]
