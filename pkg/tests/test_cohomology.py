import random

import pytest
from hypothesis import given, settings, strategies as st

from oracles import cyclic_cohomology

from brauer_manin.cohomology import (
    FiniteGroupTable,
    GLattice,
    GModuleError,
    GroupTableError,
    coboundary,
    coboundary_witness,
    cohomology_group,
    is_cocycle,
    zero_cochain,
)

LOOP5 = ((0, 1, 2, 3, 4), (1, 0, 3, 4, 2), (2, 4, 0, 1, 3), (3, 2, 4, 0, 1), (4, 3, 1, 2, 0))


def test_non_associative_table_names_the_triple():
    with pytest.raises(GroupTableError) as exc:
        FiniteGroupTable(LOOP5)
    a, b, c = exc.value.witness
    mul = lambda x, y: LOOP5[x][y]
    assert mul(mul(a, b), c) != mul(a, mul(b, c))


def test_table_must_be_latin():
    with pytest.raises(GroupTableError):
        FiniteGroupTable(((0, 1, 2), (1, 0, 2), (2, 2, 0)))


def test_known_groups():
    C2 = FiniteGroupTable.cyclic(2)
    neg = GLattice.sign(C2, [1, -1])
    assert [cohomology_group(C2, neg, i).invariant_factors for i in (1, 2, 3)] == [(2,), (), (2,)]
    V4 = FiniteGroupTable.product(C2, C2)
    Z = GLattice.trivial(V4)
    assert [cohomology_group(V4, Z, i).invariant_factors for i in (0, 1, 2, 3)] == [(0,), (), (2, 2), (2,)]
    S3, _ = FiniteGroupTable.symmetric(3)
    assert cohomology_group(S3, GLattice.trivial(S3), 2).invariant_factors == (2,)  # Hom(S3, Q/Z)
    assert cohomology_group(S3, GLattice.trivial(S3), 3).invariant_factors == ()


def test_action_must_be_a_homomorphism():
    C2 = FiniteGroupTable.cyclic(2)
    with pytest.raises(GModuleError):
        GLattice(C2, (((1,),), ((2,),)), (0,))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 8), st.sampled_from([[[1]], [[-1]], [[0, -1], [1, 0]], [[0, 1], [1, 0]], [[0, -1], [1, -1]]]))
def test_cyclic_groups_match_periodic_resolution(n, A):
    G = FiniteGroupTable.cyclic(n)
    k = 1
    P = A
    r = len(A)
    eye = [[int(i == j) for j in range(r)] for i in range(r)]
    while P != eye:
        P = [[sum(P[i][t] * A[t][j] for t in range(r)) for j in range(r)] for i in range(r)]
        k += 1
    if n % k:
        return
    M = GLattice.from_generator(G, 1 % n, A)
    for i in (1, 2, 3):
        assert tuple(cohomology_group(G, M, i).invariant_factors) == cyclic_cohomology(A, n, i)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_coboundaries_classify_to_zero(seed):
    rng = random.Random(seed)
    C2 = FiniteGroupTable.cyclic(2)
    G = FiniteGroupTable.product(C2, C2) if seed % 2 else FiniteGroupTable.cyclic(rng.randint(2, 6))
    M = GLattice.trivial(G, 2)
    f = {t: (rng.randint(-3, 3), rng.randint(-3, 3)) for t in zero_cochain(G, M, 1)}
    df = coboundary(G, M, f, 1)
    assert is_cocycle(G, M, df, 2)
    cls = cohomology_group(G, M, 2).classify(df)
    assert cls.is_zero
    w = coboundary_witness(G, M, df, 2)
    assert w.is_coboundary
    assert coboundary(G, M, w.witness, 1) == df


def test_generator_cocycle_is_not_a_coboundary():
    G = FiniteGroupTable.cyclic(3)
    M = GLattice.trivial(G)
    H2 = cohomology_group(G, M, 2)
    c = H2.cocycles[0]
    assert not H2.classify(c).is_zero
    assert not coboundary_witness(G, M, c, 2).is_coboundary
