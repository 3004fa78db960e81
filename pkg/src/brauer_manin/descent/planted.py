"""Planted descent problems with known answers.

Surfaces are triangulated and covered by open stars, so the cochain complex
of the cover computes their cohomology; a finite group acting freely plays
the role of the Galois group.

* torus grids with a translation group and integer coefficients: the class
  ``k`` times the fundamental class descends iff ``|G|`` divides ``k`` (the
  quotient map has degree ``|G|``).  For cyclic groups the obstruction sits
  in H^2(G, H^1); for ``Z/2 x Z/2`` odd ``k`` is caught in H^2 and
  ``k = 2 mod 4`` only in H^3(G, Z) = Z/2.
* the octahedron with the antipodal map, coefficients ``Z`` twisted by the
  sign or ``Z/2``: nothing in H^1, and odd ``k`` is obstructed in H^3.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from ..cech.coefficients import AbelianGroup
from ..cech.cochain import Cochain, coboundary, solve_coboundary, twist
from ..cech.cover import CombCover, simplicial_cover
from ..cohomology.groups import FiniteGroupTable
from ..cohomology.lattice import GLattice
from .datum import DescentDatum, DescentError, DivisorClassMap

TRIVIAL, H2, H3 = "unobstructed", "h2-obstructed", "h3-obstructed"


@dataclass
class PlantedCase:
    datum: DescentDatum
    expected: str
    k: int


def _perm_sign(order) -> int:
    s = 1
    order = list(order)
    for i in range(len(order)):
        for j in range(i + 1, len(order)):
            if order[i] > order[j]:
                s = -s
    return s


def _equivariant_cover(vertices, triangles, group: FiniteGroupTable, vmaps) -> CombCover:
    cov = simplicial_cover(vertices, triangles)
    bpos = {frozenset(f): i for i, f in enumerate(cov.base)}
    ta = [tuple(cov.index(vmaps[g][v]) for v in cov.total) for g in group.elements]
    ba = [tuple(bpos[frozenset(vmaps[g][v] for v in f)] for f in cov.base) for g in group.elements]
    return cov.with_group(group, ba, ta)


def _fundamental(cov: CombCover, A: AbelianGroup, tri, k: int) -> Cochain:
    """``k`` on the oriented triangle ``tri`` (alternating), zero elsewhere."""
    pos = {cov.index(v): n for n, v in enumerate(tri)}
    target = frozenset(pos)

    def val(t):
        if len(set(t)) == 3 and frozenset(t) == target:
            return tuple([k * _perm_sign([pos[i] for i in t])] + [0] * (A.rank - 1))
        return A.identity()

    return Cochain.from_function(cov, 2, A, val)


def _random_cochain(cov, p, A: AbelianGroup, rng: random.Random, spread: int = 2) -> Cochain:
    return Cochain.from_function(cov, p, A, lambda t: tuple(rng.randint(-spread, spread) for _ in range(A.rank)))


def _finish(cov, A, beta, pic, dmap, rng, label, spanning_noise=True) -> DescentDatum:
    beta = beta * coboundary(_random_cochain(cov, 1, A, rng))
    deltas = {}
    for g in cov.group.elements:
        d = solve_coboundary(beta / twist(beta, g))
        if d is None:
            raise DescentError(f"planted class is not invariant under element {g}")
        d = d * coboundary(_random_cochain(cov, 0, A, rng))
        if spanning_noise:
            for z in dmap.spanning:
                d = d * (z ** rng.randint(-2, 2))
        deltas[g] = d
    return DescentDatum(cov, beta, deltas, pic, dmap, label)


# ------------------------------------------------------------ torus


def torus_group(kind: str):
    """Grid size and translation generators for the supported groups."""
    if kind == "C2":
        return (4, 3), FiniteGroupTable.cyclic(2), [(2, 0)]
    if kind == "C3":
        return (3, 3), FiniteGroupTable.cyclic(3), [(1, 1)]
    if kind == "C4":
        return (4, 3), FiniteGroupTable.cyclic(4), [(1, 0)]
    if kind == "V4":
        return (4, 4), FiniteGroupTable.product(FiniteGroupTable.cyclic(2), FiniteGroupTable.cyclic(2)), [(2, 0), (0, 2)]
    raise ValueError(f"unknown torus group {kind!r}")


def _translations(kind, m, n, G, gens):
    """Translation vector of each group element."""
    if kind == "V4":
        # product of C2 x C2 indexes elements as a * 2 + b
        out = []
        for g in G.elements:
            a, b = divmod(g, 2)
            out.append(((a * gens[0][0] + b * gens[1][0]) % m, (a * gens[0][1] + b * gens[1][1]) % n))
        return out
    dx, dy = gens[0]
    return [((g * dx) % m, (g * dy) % n) for g in G.elements]


def _check_translations(G, shifts, m, n):
    for g in G.elements:
        for h in G.elements:
            s, t = shifts[g], shifts[h]
            if shifts[G.mul(g, h)] != ((s[0] + t[0]) % m, (s[1] + t[1]) % n):
                raise ValueError("translation vectors do not form a homomorphism")


def torus_datum(kind: str, k: int, rng: Optional[random.Random] = None) -> DescentDatum:
    rng = rng or random.Random(0)
    (m, n), G, gens = torus_group(kind)
    shifts = _translations(kind, m, n, G, gens)
    _check_translations(G, shifts, m, n)
    verts = [(i, j) for i in range(m) for j in range(n)]
    tris = []
    for i in range(m):
        for j in range(n):
            a, b, c, d = (i, j), ((i + 1) % m, j), ((i + 1) % m, (j + 1) % n), (i, (j + 1) % n)
            tris += [(a, b, c), (a, c, d)]
    vmaps = [{(i, j): ((i + s[0]) % m, (j + s[1]) % n) for (i, j) in verts} for s in shifts]
    cov = _equivariant_cover(verts, tris, G, vmaps)
    A = AbelianGroup((0,))
    beta = _fundamental(cov, A, tris[0], k)

    def lift(a, b, size):
        # short displacement from a to b on the circle of length size
        d = (b - a) % size
        return d if d <= 1 else d - size

    def wrap(axis, size):
        def fn(t):
            u, v = cov.total[t[0]], cov.total[t[1]]
            return ((lift(u[axis], v[axis], size) - (v[axis] - u[axis])) // size,)

        return Cochain.from_function(cov, 1, A, fn)

    z1, z2 = wrap(0, m), wrap(1, n)
    weights = {}
    for i in range(m):
        weights[((cov.index((i, 0)), cov.index(((i + 1) % m, 0))), 0)] = (1, 0)
    for j in range(n):
        key = ((cov.index((0, j)), cov.index((0, (j + 1) % n))), 0)
        w = weights.get(key, (0, 0))
        weights[key] = (w[0], w[1] + 1)
    dmap = DivisorClassMap(cov, 2, weights, (z1, z2))
    pic = GLattice.trivial(G, 2)
    return _finish(cov, A, beta, pic, dmap, rng, f"torus-{kind}-k{k}")


def torus_expected(kind: str, k: int) -> str:
    order = {"C2": 2, "C3": 3, "C4": 4, "V4": 4}[kind]
    if k % order == 0:
        return TRIVIAL
    if kind == "V4" and k % 2 == 0:
        return H3
    return H2


# ------------------------------------------------------------ octahedron


def octahedron_datum(k: int, coefficients: str = "sign", rng: Optional[random.Random] = None) -> DescentDatum:
    """Antipodal Z/2 on the octahedron; ``coefficients`` is ``"sign"`` (Z twisted) or ``"mod2"``."""
    rng = rng or random.Random(0)
    G = FiniteGroupTable.cyclic(2)
    verts = [(s, a) for a in range(3) for s in (1, -1)]
    tris = [((sx, 0), (sy, 1), (sz, 2)) for sx in (1, -1) for sy in (1, -1) for sz in (1, -1)]
    vmaps = [{v: v for v in verts}, {(s, a): (-s, a) for (s, a) in verts}]
    cov = _equivariant_cover(verts, tris, G, vmaps)
    if coefficients == "sign":
        A = AbelianGroup((0,), (((1,),), ((-1,),)))
    elif coefficients == "mod2":
        A = AbelianGroup((2,))
    else:
        raise ValueError(f"unknown coefficients {coefficients!r}")
    beta = _fundamental(cov, A, tris[0], k)
    pic = GLattice(G, ((), ()), ())
    return _finish(cov, A, beta, pic, DivisorClassMap.zero(cov), rng, f"octahedron-{coefficients}-k{k}")


def octahedron_expected(k: int) -> str:
    return H3 if k % 2 else TRIVIAL


# ------------------------------------------------------------ corpus


def planted_corpus(per_class: int = 50, seed: int = 0) -> list[PlantedCase]:
    """At least ``per_class`` cases of each verdict over groups of order 2, 3 and 4."""
    rng = random.Random(seed)
    want = {TRIVIAL: [], H2: [], H3: []}
    menu = {
        TRIVIAL: [("C2", 2), ("C2", 4), ("C3", 3), ("C3", -3), ("C4", 4), ("V4", 4), ("V4", 0), ("C2", 0), ("oct", 2), ("oct", 0)],
        H2: [("C2", 1), ("C2", 3), ("C3", 1), ("C3", 2), ("C4", 1), ("C4", 2), ("C4", 3), ("V4", 1), ("V4", 3)],
        H3: [("V4", 2), ("V4", 6), ("V4", -2), ("oct", 1), ("oct", 3), ("oct", -1)],
    }
    for verdict, options in menu.items():
        for i in range(per_class):
            kind, k = options[i % len(options)]
            if kind == "oct":
                coeff = "sign" if i % 2 == 0 else "mod2"
                d = octahedron_datum(k, coeff, random.Random(rng.random()))
                exp = octahedron_expected(k)
            else:
                d = torus_datum(kind, k, random.Random(rng.random()))
                exp = torus_expected(kind, k)
            if exp != verdict:
                raise AssertionError(f"menu entry {kind, k} is not {verdict}")
            want[verdict].append(PlantedCase(d, exp, k))
    return [c for v in (TRIVIAL, H2, H3) for c in want[v]]
