import random

import pytest
from hypothesis import given, settings, strategies as st

from brauer_manin.cech import (
    AbelianGroup,
    Cochain,
    CombCover,
    GlueError,
    coboundary,
    disjoint_union,
    fiber_product,
    is_coboundary,
    mu_n_reduce,
    mv_glue,
    refine_with_correction,
    restrict_to_piece,
    simplicial_cover,
    solve_coboundary,
    trivialize_locally,
    twist,
    verify_cocycle,
)
from brauer_manin.cohomology import FiniteGroupTable
from brauer_manin.descent.planted import torus_datum


def projection_cover(rng, base, maxf=3):
    return CombCover.from_projection(base, {f"{x}{k}": x for x in base for k in range(rng.randint(1, maxf))})


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 2))
def test_coboundary_squares_to_zero(seed, p):
    rng = random.Random(seed)
    m = rng.randint(2, 12)
    A = AbelianGroup.cyclic(m)
    C = projection_cover(rng, ["a", "b", "c"][: rng.randint(1, 3)])
    c = Cochain.from_function(C, p - 1, A, lambda t: (rng.randrange(m),))
    assert coboundary(coboundary(c)).is_trivial()


def test_perturbed_cocycle_reports_tuple():
    rng = random.Random(1)
    A = AbelianGroup.cyclic(5)
    C = projection_cover(rng, ["a", "b"], 3)
    b = coboundary(Cochain.from_function(C, 1, A, lambda t: (rng.randrange(5),)))
    assert verify_cocycle(b)
    vals = dict(b.values)
    t = sorted(vals)[3]
    vals[t] = A.op(vals[t], (1,))
    chk = verify_cocycle(Cochain(C, 2, A, vals))
    assert not chk
    assert any(set(t) <= set(f) for f in chk.failing)


def test_glue_with_trivial_comparison():
    rng = random.Random(3)
    A = AbelianGroup.cyclic(6)
    C = projection_cover(rng, ["a", "b"], 2)
    beta = coboundary(Cochain.from_function(C, 1, A, lambda t: (rng.randrange(6),)))
    F = fiber_product(C, C)
    g = mv_glue(beta, beta, Cochain.trivial(F, 1, A))
    assert verify_cocycle(g)
    assert restrict_to_piece(g, 1) == beta and restrict_to_piece(g, 2) == beta


def test_glue_rejects_bad_comparison():
    rng = random.Random(4)
    A = AbelianGroup.cyclic(4)
    C = projection_cover(rng, ["a"], 2)
    b1 = coboundary(Cochain.from_function(C, 1, A, lambda t: (rng.randrange(4),)))
    b2 = Cochain.trivial(C, 2, A)
    if b1.is_trivial():
        b1 = coboundary(Cochain.from_function(C, 1, A, lambda t: (1,) if t[0] != t[1] else (0,)))
    with pytest.raises(GlueError) as exc:
        mv_glue(b1, b2, Cochain.trivial(fiber_product(C, C), 1, A))
    assert exc.value.tuple is not None


def test_twist_is_an_action():
    d = torus_datum("C4", 1, random.Random(0))
    G = d.group
    c = d.deltas[1]
    for g in G.elements:
        for h in G.elements:
            assert twist(twist(c, h), g) == twist(c, G.mul(g, h))
    assert twist(c, 0) == c


def test_solve_coboundary_returns_preimage():
    rng = random.Random(5)
    A = AbelianGroup.cyclic(7)
    C = projection_cover(rng, ["a", "b", "c"], 3)
    a = Cochain.from_function(C, 1, A, lambda t: (rng.randrange(7),))
    b = solve_coboundary(coboundary(a))
    assert b is not None and coboundary(b) == coboundary(a)


def test_circle_cocycle_is_locally_trivial():
    C = simplicial_cover([0, 1, 2], [(0, 1), (1, 2), (0, 2)])
    Z = AbelianGroup.cyclic(0)

    def alt(t):
        a, b = t
        if {a, b} == {0, 1}:
            return (1 if (a, b) == (0, 1) else -1,)
        return (0,)

    c = Cochain.from_function(C, 1, Z, alt)
    assert verify_cocycle(c)
    assert not is_coboundary(c)
    tr = trivialize_locally(c)
    assert tr.ok
    for part in tr.parts:
        assert part.trivialized


def test_refinement_along_the_identity():
    rng = random.Random(2)
    A = AbelianGroup.cyclic(5)
    C = simplicial_cover([0, 1, 2], [(0, 1), (1, 2), (0, 2)])
    b = coboundary(Cochain.from_function(C, 1, A, lambda t: (rng.randrange(5),)))
    Y = disjoint_union(C, C)
    r = refine_with_correction(b, Y, [i % C.size for i in range(Y.size)])
    assert verify_cocycle(r.cocycle)


def test_mu_n_reduction_gives_the_nonsplit_extension():
    G = FiniteGroupTable.cyclic(2)
    T = CombCover.from_projection(["x"], {"y0": "x", "y1": "x"}).with_group(G, [(0,), (0,)], [(0, 1), (1, 0)])
    A2 = AbelianGroup.cyclic(2)

    def f(t):
        a, b = (t[1] - t[0]) % 2, (t[2] - t[1]) % 2
        return (int(a == 1 and b == 1),)

    beta = Cochain.from_function(T, 2, A2, f)
    assert verify_cocycle(beta)
    ext = mu_n_reduce(beta, Cochain.trivial(T, 1, A2), 2).extension
    assert not ext.is_split
    assert max(ext.table.element_order(x) for x in ext.table.elements) == 4


def test_two_point_example_counts_all_tuples():
    rng = random.Random(0)
    C = CombCover.from_projection(["a", "b"], {"a1": "a", "a2": "a", "b1": "b", "b2": "b"})
    A = AbelianGroup.cyclic(4)
    c = Cochain.from_function(C, 1, A, lambda t: (rng.randrange(4),))
    dd = coboundary(coboundary(c))
    assert len(dd.values) == 32 and dd.is_trivial()
    assert len(C.tuples(2)) == 16
