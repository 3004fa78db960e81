"""Mayer-Vietoris gluing of two descent data with the same group."""
from __future__ import annotations

from typing import Optional

from ..cech.cochain import Cochain, coboundary_rows, from_vector, solve_coboundary, twist
from ..cech.cover import CombCover, disjoint_union
from ..cech.glue import mv_glue
from ..exact.linsolve import solve_integer
from .datum import DescentDatum, DescentError, DivisorClassMap


def union_with_action(a: CombCover, b: CombCover) -> CombCover:
    """Disjoint union carrying the combined action of the common group."""
    if a.group is None or a.group != b.group:
        raise DescentError("both covers must carry the same group action")
    U = disjoint_union(a, b)
    G = a.group
    bpos = {x: i for i, x in enumerate(U.base)}
    n1 = a.size
    ta, ba = [], []
    for g in G.elements:
        ta.append(tuple(a.total_action[g]) + tuple(n1 + j for j in b.total_action[g]))
        img: dict[int, int] = {}
        for cov in (a, b):
            for x, lab in enumerate(cov.base):
                tgt = bpos[cov.base[cov.base_action[g][x]]]
                if img.setdefault(bpos[lab], tgt) != tgt:
                    raise DescentError(f"the two actions disagree on base point {lab!r}")
        ba.append(tuple(img[x] for x in range(len(U.base))))
    return CombCover(U.base, U.total, U.support, U.pieces, G, tuple(ba), tuple(ta))


def _extend_cocycle(z: Cochain, U: CombCover) -> Cochain:
    """A 1-cocycle on ``U`` agreeing with ``z`` on the first piece's sheets."""
    A = z.group
    r = A.rank
    rows = list(coboundary_rows(U, 1, r))
    rhs = [0] * len(rows)
    mods = [A.moduli[i % r] for i in range(len(rows))]
    idx = U.tuple_index(1)
    for t, v in z.values.items():
        for k in range(r):
            rows.append({idx[t] * r + k: 1})
            rhs.append(v[k])
            mods.append(A.moduli[k])
    x = solve_integer(rows, rhs, len(U.tuples(1)) * r, mods)
    if x is None:
        raise DescentError("a spanning cocycle does not extend to the glued cover")
    return from_vector(U, 1, A, x)


def galois_mv_glue(
    datum1: DescentDatum,
    datum2: Optional[DescentDatum],
    delta: Optional[Cochain],
    divisor_class_map: Optional[DivisorClassMap] = None,
) -> DescentDatum:
    """Glue along ``delta`` (on the fiber product) and rebuild the comparison cochains.

    When ``divisor_class_map`` is omitted, the first piece must already cover
    the whole base; its map is pulled back through the first summand.
    """
    if datum2 is None or datum2.cover.size == 0:
        return datum1
    if datum1.group != datum2.group or datum1.coefficients != datum2.coefficients:
        raise DescentError("the two data use different groups or coefficients")
    glued = mv_glue(datum1.beta, datum2.beta, delta)
    U = union_with_action(datum1.cover, datum2.cover)
    A = datum1.coefficients
    beta = Cochain(U, 2, A, glued.values)
    deltas = {}
    for g in U.group.elements:
        d = solve_coboundary(beta / twist(beta, g))
        if d is None:
            raise DescentError(f"glued class is not invariant under element {g}", g)
        deltas[g] = d
    if divisor_class_map is None:
        C1 = datum1.cover
        if len(C1.base) != len(U.base):
            raise DescentError("a divisor class map is required when the first piece is not the whole base")
        D1 = datum1.divisor_class_map
        weights = {(t, k): w for (t, k), w in D1.weights.items()}
        spanning = tuple(_extend_cocycle(z, U) for z in D1.spanning)
        divisor_class_map = DivisorClassMap(U, D1.rank, weights, spanning)
    out = DescentDatum(U, beta, deltas, datum1.pic, divisor_class_map, f"glue({datum1.label},{datum2.label})")
    out.validate()
    return out
