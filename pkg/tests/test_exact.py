from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors as sympy_factors

from brauer_manin.exact import (
    INF,
    PlaceP1,
    Poly,
    divisor_of_function,
    factor_polynomial,
    padic_decompose,
    parse_place_q,
    parse_rational_function,
    smith_form,
    solve_integer,
    valuation,
    valuation_at,
)
from brauer_manin.exact.padic import rational_nth_root
from brauer_manin.exact.smith import invariant_factors, matmul

small = st.integers(-6, 6)
matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r))
)
polys = st.lists(st.integers(-5, 5), max_size=5).map(Poly)


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_smith_form_is_a_factorization(m):
    sf = smith_form(m)
    assert matmul(matmul(sf.U, m), sf.V) == sf.D
    assert matmul(sf.U, sf.U_inv) == [[int(i == j) for j in range(len(m))] for i in range(len(m))]
    diag = [sf.D[i][i] for i in range(min(len(m), len(m[0])))]
    nz = [d for d in diag if d]
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert all(sf.D[i][j] == 0 for i in range(len(m)) for j in range(len(m[0])) if i != j)


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_invariant_factors_agree_with_sympy(m):
    ours = [abs(d) for d in invariant_factors(m) if d]
    ref = [abs(int(d)) for d in sympy_factors(Matrix(m), domain=ZZ) if d]
    assert ours == ref


@given(polys, polys)
def test_polynomial_division(a, b):
    if b.is_zero():
        with pytest.raises(ZeroDivisionError):
            divmod(a, b)
        return
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.is_zero() or r.degree < b.degree


@given(st.integers(-10**6, 10**6).filter(bool), st.sampled_from([2, 3, 5, 7]))
def test_valuation_and_unit_part(n, p):
    v = valuation(n, p)
    assert n % p**v == 0 and (n // p**v) % p != 0
    assert valuation(Fraction(1, n), p) == -v


def test_padic_decomposition_digits():
    d = padic_decompose(Fraction(-12), 2, 4)
    assert d.valuation == 2
    assert padic_decompose(Fraction(3, 5), INF).valuation is not None


def test_rational_roots():
    assert rational_nth_root(Fraction(8, 27), 3) == Fraction(2, 3)
    assert rational_nth_root(-8, 3) == -2
    assert rational_nth_root(2, 2) is None
    assert rational_nth_root(-4, 2) is None


def test_places_and_divisors():
    assert parse_place_q("inf") == INF and parse_place_q(" 7 ") == 7
    with pytest.raises(ValueError):
        parse_place_q("9")
    r = parse_rational_function("(t^2 - 3)^2 / (t*(t - 1))")
    div = divisor_of_function(r)
    assert div[PlaceP1.parse("t^2 - 3")] == 2
    assert div[PlaceP1.parse("t")] == -1
    assert sum(y.degree * m for y, m in div.items()) == 0
    assert valuation_at(r, PlaceP1.infinity()) == -2


def test_factorization_round_trip():
    f = Poly([-6, 0, 5, 0, -1])  # -(t^2 - 2)(t^2 - 3)
    c, fs = factor_polynomial(f)
    prod = Poly.const(c)
    for g, e in fs:
        prod = prod * g**e
    assert prod == f and len(fs) == 2


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(-4, 4), min_size=3, max_size=3), min_size=1, max_size=3),
       st.lists(st.integers(-3, 3), min_size=3, max_size=3))
def test_solve_integer_finds_planted_solution(rows, x):
    rhs = [sum(a * b for a, b in zip(r, x)) for r in rows]
    sparse = [{j: a for j, a in enumerate(r) if a} for r in rows]
    sol = solve_integer(sparse, rhs, 3)
    assert sol is not None
    assert [sum(a * b for a, b in zip(r, sol)) for r in rows] == rhs


def test_solve_integer_detects_obstruction():
    assert solve_integer([{0: 2}], [1], 1) is None
    assert solve_integer([{0: 2}], [1], 1, moduli=[3]) is not None
