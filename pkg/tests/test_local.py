from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from brauer_manin.exact import INF
from brauer_manin.local import (
    HALF,
    INCONCLUSIVE,
    OBSTRUCTED,
    UNOBSTRUCTED,
    Chart,
    ExpressionError,
    InvariantTable,
    PlaceRow,
    QuaternionClass,
    bad_places,
    bm_verdict,
    equation_polynomial,
    hilbert_formula,
    hilbert_oracle,
    hilbert_symbol,
    invariant_row,
    local_point_search,
    parse_expression,
    square_class_polynomial,
)

nonzero = st.integers(-3000, 3000).filter(bool)
places = st.sampled_from([2, 3, 5, 7, 11, 13, INF])


@given(nonzero, nonzero, places)
def test_symmetry(a, b, v):
    assert hilbert_formula(a, b, v) == hilbert_formula(b, a, v)


@given(nonzero, nonzero, nonzero, places)
def test_bimultiplicativity(a, b, c, v):
    assert hilbert_formula(a, b * c, v) == (hilbert_formula(a, b, v) + hilbert_formula(a, c, v)) % 1


@given(nonzero.filter(lambda a: a != 1), places)
def test_steinberg(a, v):
    assert hilbert_formula(a, 1 - a, v) == 0
    assert hilbert_formula(a, -a, v) == 0


@given(nonzero, nonzero)
def test_product_formula(a, b):
    assert sum(hilbert_formula(a, b, v) for v in bad_places(a, b)) % 1 == 0


@settings(max_examples=200, deadline=None)
@given(st.integers(-60, 60).filter(bool), st.integers(-60, 60).filter(bool), st.sampled_from([2, 3, 5, 7, INF]))
def test_formula_matches_search_oracle(a, b, v):
    assert hilbert_formula(a, b, v) == hilbert_oracle(a, b, v)


def test_known_symbols():
    assert hilbert_symbol(-1, -1, 2) == HALF
    assert hilbert_symbol(-1, -1, INF) == HALF
    assert hilbert_symbol(-1, -1, 3) == 0
    assert hilbert_symbol(-1, 3, 3) == HALF
    assert hilbert_symbol(Fraction(2, 9), 5, 5, mode="oracle") == HALF
    with pytest.raises(ValueError):
        hilbert_symbol(0, 3, 3)


def test_expression_parsing():
    num, den = parse_expression("(3 - x^2)/(2*y)", ("x", "y"))
    assert num((Fraction(1), Fraction(1))) == 2 and den((Fraction(1), Fraction(5))) == 10
    F = equation_polynomial("y^2 + z^2 = (3 - x^2)*(x^2 - 2)", ("x", "y", "z"))
    assert F((Fraction(0),) * 3) != 0
    with pytest.raises(ExpressionError):
        equation_polynomial("y^2 + = 1", ("y",))
    with pytest.raises(ExpressionError):
        square_class_polynomial("q + 1", ("x",))


def circle():
    return Chart("z", equation_polynomial("x^2 + y^2 = 1", ("x", "y")))


@pytest.mark.parametrize("v", [2, 3, 5, INF])
def test_points_carry_checkable_certificates(v):
    ch = circle()
    res = local_point_search(ch, v, 6)
    assert res.points and res.exhaustive
    assert all(p.check(ch) for p in res.points)


def test_no_points_is_exhaustive():
    ch = Chart("z", equation_polynomial("x^2 + y^2 = -1", ("x", "y")))
    res = local_point_search(ch, INF, 6)
    assert not res.points and res.exhaustive


def test_constant_class_on_the_circle():
    ch = circle()
    alpha = QuaternionClass("c", {"z": ((square_class_polynomial("-1", ch.variables), square_class_polynomial("3", ch.variables)),)})
    row3 = invariant_row(alpha, [ch], 3, 6)
    row2 = invariant_row(alpha, [ch], 2, 6)
    assert row3.values == (HALF,) and row3.complete
    assert row2.values == (HALF,) and row2.complete


def row(v, vals, complete=True):
    return PlaceRow(v, tuple(vals), complete, 1, 1, 1)


def test_verdicts():
    ob = InvariantTable("a", [row(2, [HALF]), row(INF, [Fraction(0)])])
    assert bm_verdict([ob]).verdict == OBSTRUCTED
    flexible = InvariantTable("b", [row(2, [HALF, Fraction(0)]), row(INF, [Fraction(0)])])
    assert bm_verdict([flexible]).verdict == UNOBSTRUCTED
    partial = InvariantTable("c", [row(2, [HALF], complete=False), row(INF, [Fraction(0)])])
    assert bm_verdict([partial]).verdict == INCONCLUSIVE


@given(st.lists(st.tuples(st.sampled_from([2, 3, 5, 7, INF]), st.sets(st.sampled_from([Fraction(0), HALF]), min_size=1), st.booleans()), max_size=5))
def test_obstructed_only_with_complete_tables(rows):
    t = InvariantTable("x", [row(v, sorted(vals), c) for v, vals, c in rows])
    if bm_verdict([t]).verdict == OBSTRUCTED:
        assert t.complete
