"""Exact arithmetic substrate: rationals, polynomials over Q, places, integer normal forms."""
from fractions import Fraction as Rational

from .linsolve import solve_integer
from .padic import PadicDecomposition, padic_decompose, valuation
from .places import (
    INF,
    PlaceP1,
    PlaceQ,
    divisor_of_function,
    factor_polynomial,
    is_prime,
    parse_place_q,
    valuation_at,
)
from .poly import Poly, RationalFunction, format_rational_function, parse_poly, parse_rational_function
from .smith import SmithForm, smith_form, smith_normal_form

__all__ = [
    "INF",
    "PadicDecomposition",
    "PlaceP1",
    "PlaceQ",
    "Poly",
    "Rational",
    "RationalFunction",
    "SmithForm",
    "divisor_of_function",
    "factor_polynomial",
    "format_rational_function",
    "is_prime",
    "padic_decompose",
    "parse_place_q",
    "parse_poly",
    "parse_rational_function",
    "smith_form",
    "smith_normal_form",
    "solve_integer",
    "valuation",
    "valuation_at",
]
