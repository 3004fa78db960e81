import itertools

import pytest
from hypothesis import given, settings, strategies as st

from brauer_manin.exact import PlaceP1, Poly, parse_rational_function as R
from brauer_manin.kummer import (
    KummerError,
    OpenCurveP1,
    ResidueTuple,
    branch_data,
    build_kummer_cover,
    enumerate_realizable,
    faddeev_residue,
    is_nth_power_in_residue_field,
    realizable_residue_tuple,
)

PLACES = ["inf", "t", "t - 1", "t + 2", "t^2 + 1", "t^2 - 3", "t^3 - 2"]
curves = st.sets(st.sampled_from(PLACES), min_size=1, max_size=4).map(lambda s: OpenCurveP1.parse(sorted(s)))


@settings(max_examples=60, deadline=None)
@given(curves, st.integers(1, 5), st.data())
def test_built_cover_has_the_requested_branch_data(C, n, data):
    res = data.draw(st.tuples(*[st.integers(0, n - 1) for _ in C.removed]))
    t = ResidueTuple(res, n)
    if not realizable_residue_tuple(C, t):
        with pytest.raises(KummerError):
            build_kummer_cover(C, t)
        return
    cover = build_kummer_cover(C, t)
    assert branch_data(cover.r, C, n) == t.residues
    assert cover.twist(5).branch == cover.branch


@settings(max_examples=40, deadline=None)
@given(curves, st.integers(1, 4))
def test_realizable_tuples_form_a_subgroup(C, n):
    S = set(t.residues for t in enumerate_realizable(C, n))
    zero = (0,) * len(C.removed)
    assert zero in S
    for a, b in itertools.product(S, repeat=2):
        assert (ResidueTuple(a, n) + ResidueTuple(b, n)).residues in S
    # index equals n / gcd(n, degrees)
    from math import gcd

    g = 0
    for y in C.removed:
        g = gcd(g, y.degree)
    assert len(S) * (n // gcd(n, g)) == n ** len(C.removed)


def test_cube_root_example():
    C = OpenCurveP1.parse(["t", "t - 1", "inf"])
    cover = build_kummer_cover(C, ResidueTuple((1, 2, 0), 3))
    assert str(cover.r) == "t^3 - 2*t^2 + t"


def test_shape_errors():
    C = OpenCurveP1.parse(["t", "inf"])
    with pytest.raises(KummerError):
        realizable_residue_tuple(C, ResidueTuple((1,), 2))
    with pytest.raises(KummerError):
        OpenCurveP1.parse(["t", "t"])


def test_tame_symbol_values():
    y = PlaceP1.parse("t")
    assert not faddeev_residue(R("t"), R("t"), y).trivial  # (t, t) = (t, -1)
    res = faddeev_residue(R("-1"), R("3 - t^2"), PlaceP1.parse("t^2 - 3"))
    assert not res.trivial  # -1 is not a square in Q(sqrt 3)
    assert faddeev_residue(R("-1"), R("3 - t^2"), PlaceP1.parse("t^2 - 2")).trivial
    assert faddeev_residue(R("-1"), R("t^2 + 1"), PlaceP1.parse("t^2 + 1")).trivial  # -1 = i^2
    assert not faddeev_residue(R("-3"), R("t^2 + 1"), PlaceP1.parse("t^2 + 1")).trivial


unit_like = st.sampled_from(["2", "-1", "3", "t", "t - 1", "t^2 + 1", "2*t", "-(t - 1)^2", "t/(t + 1)"])


def _square_class_product(y, *values):
    prod = Poly.const(1)
    for v in values:
        prod = prod * v
        if not y.is_infinite:
            prod = prod % y.poly
    return is_nth_power_in_residue_field(prod, y, 2)


@settings(max_examples=40, deadline=None)
@given(unit_like, unit_like, unit_like, st.sampled_from(["t", "t - 1", "t + 1", "t^2 + 1", "inf"]))
def test_tame_symbol_is_bimultiplicative_and_antisymmetric(f, g, h, y):
    y = PlaceP1.parse(y)
    f, g, h = R(f), R(g), R(h)
    res = lambda a, b: faddeev_residue(a, b, y).value
    # classes have exponent 2, so x y z trivial means x = y z
    assert _square_class_product(y, res(f, g * h), res(f, g), res(f, h))
    assert _square_class_product(y, res(f, g), res(g, f))
