"""Explicit cocycle manipulations: Mayer-Vietoris glue, refinement with a
correcting cochain, local trivialization of 1-cocycles and reduction of a
2-cocycle with an n-th root datum to a central extension of finite groups.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional, Sequence

from ..cohomology.bar import CohomologyClass, cohomology_group
from ..cohomology.groups import FiniteGroupTable
from ..cohomology.lattice import GLattice
from .coefficients import AbelianGroup
from .cochain import (
    Cochain,
    CochainError,
    check_refinement,
    coboundary,
    pullback,
    restrict_cochain,
    solve_coboundary,
    twist,
    verify_cocycle,
)
from .cover import CombCover, CoverError, disjoint_union, fiber_product


class GlueError(ValueError):
    def __init__(self, message: str, tuple_=None):
        super().__init__(message)
        self.tuple = tuple_


# ------------------------------------------------------------ Mayer-Vietoris


def overlap_cover(beta1: Cochain, beta2: Cochain) -> CombCover:
    return fiber_product(beta1.cover, beta2.cover)


def check_glue_hypothesis(beta1: Cochain, beta2: Cochain, delta: Cochain) -> Optional[tuple]:
    """First overlap triple where ``d(delta) = beta1 / beta2`` fails, as sheet labels; None if it holds."""
    G = beta1.group
    F = delta.cover
    ddel = coboundary(delta)
    for t in F.tuples(2):
        pairs = [F.total[i] for i in t]
        i1 = tuple(beta1.cover.index(p[0]) for p in pairs)
        i2 = tuple(beta2.cover.index(p[1]) for p in pairs)
        rhs = G.div(beta1.values[i1], beta2.values[i2])
        if not G.eq(ddel.values[t], rhs):
            return tuple(pairs)
    return None


def mv_glue(beta1: Cochain, beta2: Cochain, delta: Cochain) -> Cochain:
    """Glue 2-cocycles on two pieces into a 2-cocycle on their disjoint union.

    ``beta_i`` live on covers ``Y_i`` of the pieces and ``delta`` on the
    fiber product ``Y_1 x Y_2`` (sheets ``(y1, y2)``).  Writing
    ``delta(y1, y1', y2, y2')`` for the value at ``((y1, y2), (y1', y2'))``,
    the hypothesis is ``d(delta) = beta1 / beta2`` on overlap triples.  The
    result is defined by eight cases according to which piece each entry
    comes from; pure tuples reproduce ``beta1`` and ``beta2`` literally.
    Sheets of the union are labelled ``(1, y1)`` and ``(2, y2)``.
    """
    if beta1.degree != 2 or beta2.degree != 2 or delta.degree != 1:
        raise GlueError("need two 2-cochains and a 1-cochain")
    if beta1.group != beta2.group or beta1.group != delta.group:
        raise GlueError("coefficient groups differ")
    C1, C2 = beta1.cover, beta2.cover
    F = overlap_cover(beta1, beta2)
    if delta.cover != F:
        raise GlueError("delta must live on the fiber product of the two covers")
    bad = check_glue_hypothesis(beta1, beta2, delta)
    if bad is not None:
        raise GlueError(f"hypothesis d(delta) = beta1/beta2 fails at {bad}", bad)

    G = beta1.group
    U = disjoint_union(C1, C2)
    n1 = C1.size
    b1, b2, dv = beta1.values, beta2.values, delta.values

    def d(a, a2, b, b2_):
        # delta(y1, y1', y2, y2') = delta((y1, y2), (y1', y2'))
        return dv[(F.index((C1.total[a], C2.total[b])), F.index((C1.total[a2], C2.total[b2_])))]

    inv, op = G.inv, G.op
    out = {}
    for t in U.tuples(2):
        kinds = tuple(1 if i < n1 else 2 for i in t)
        u, v, w = (i if i < n1 else i - n1 for i in t)
        if kinds == (1, 1, 1):
            val = b1[(u, v, w)]
        elif kinds == (1, 1, 2):
            val = op(d(u, v, w, w), b2[(w, w, w)])
        elif kinds == (1, 2, 1):
            val = inv(op(d(u, w, v, v), b2[(v, v, v)]))
        elif kinds == (1, 2, 2):
            val = op(inv(d(u, u, v, w)), b1[(u, u, u)])
        elif kinds == (2, 1, 1):
            val = op(d(v, w, u, u), b2[(u, u, u)])
        elif kinds == (2, 1, 2):
            val = op(d(v, v, u, w), inv(b1[(v, v, v)]))
        elif kinds == (2, 2, 1):
            val = op(inv(d(w, w, u, v)), b1[(w, w, w)])
        else:
            val = b2[(u, v, w)]
        out[t] = val
    return Cochain(U, 2, G, out)


def restrict_to_piece(c: Cochain, which: int) -> Cochain:
    """Values of a cochain on the disjoint union at tuples lying entirely in one piece."""
    U = c.cover
    tag = which
    keep = [i for i, y in enumerate(U.total) if y[0] == tag]
    labels = [U.total[i][1] for i in keep]
    base_idx = sorted({x for i in keep for x in U.support[i]})
    bpos = {x: n for n, x in enumerate(base_idx)}
    sub = CombCover(
        tuple(U.base[x] for x in base_idx),
        tuple(labels),
        tuple(frozenset(bpos[x] for x in U.support[i]) for i in keep),
    )
    return restrict_cochain(c, sub, keep)


# ------------------------------------------------------------ refinement


def homotopy_operator(c: Cochain, target: CombCover, phi: Sequence[int], psi: Sequence[int]) -> Cochain:
    """Prism cochain ``(Kc)(y_0..y_{p-1}) = prod_i c(phi y_0..phi y_i, psi y_i..psi y_{p-1})^{(-1)^i}``.

    For a cocycle c, ``psi^* c = phi^* c . d(Kc)``.
    """
    p = c.degree
    if p == 0:
        raise CochainError("no homotopy below degree 1")
    G = c.group
    vals = c.values

    def fn(t):
        acc = G.identity()
        for i in range(p):
            key = tuple(phi[y] for y in t[: i + 1]) + tuple(psi[y] for y in t[i:])
            v = vals[key]
            acc = G.op(acc, v if i % 2 == 0 else G.inv(v))
        return acc

    return Cochain.from_function(target, p - 1, G, fn)


@dataclass
class Refinement:
    cocycle: Cochain
    correction: Cochain
    reference: Cochain


def refine_with_correction(
    beta: Cochain,
    target: CombCover,
    phi: Sequence[int],
    psi: Optional[Sequence[int]] = None,
) -> Refinement:
    """Pull ``beta`` back along ``phi: target -> beta.cover`` with a correcting cochain.

    ``psi`` is a second refinement map (default: ``phi``).  Returns the
    pullback along ``phi``, the pullback along ``psi`` (``reference``) and a
    cochain h with ``reference = cocycle . dh``; h is trivial when the two
    maps agree.
    """
    check_refinement(target, beta.cover, phi)
    if psi is None:
        psi = phi
    else:
        check_refinement(target, beta.cover, psi)
    a = pullback(beta, target, phi)
    b = pullback(beta, target, psi)
    h = homotopy_operator(beta, target, phi, psi)
    if list(phi) == list(psi):
        h = Cochain.trivial(target, beta.degree - 1, beta.group)
    if coboundary(h) != b / a:
        raise GlueError("internal: homotopy identity failed (input is not a cocycle?)")
    return Refinement(a, h, b)


def compose_maps(outer: Sequence[int], inner: Sequence[int]) -> tuple[int, ...]:
    """``outer o inner`` for sheet maps given as index lists."""
    return tuple(outer[i] for i in inner)


# ------------------------------------------------------------ local trivialization


@dataclass
class TrivialPart:
    base: tuple
    witness: Optional[Cochain]

    @property
    def trivialized(self) -> bool:
        return self.witness is not None


@dataclass
class Trivialization:
    parts: list[TrivialPart]
    searched: int
    exhausted_budget: bool = False

    @property
    def ok(self) -> bool:
        return all(p.trivialized for p in self.parts)

    @property
    def failed_parts(self) -> list[TrivialPart]:
        return [p for p in self.parts if not p.trivialized]


def _orbit_closed(cover: CombCover, S) -> bool:
    if cover.group is None:
        return True
    return all(frozenset(cover.base_action[g][x] for x in S) == frozenset(S) for g in cover.group.elements)


def trivialize_locally(c: Cochain, equivariant: bool = False, budget: int = 4096) -> Trivialization:
    """Partition the base so that on each part ``c`` is the coboundary of a 0-cochain.

    Parts are grown greedily: for the first uncovered base point the largest
    trivializing subset of the uncovered points containing it is taken, trying
    subsets in decreasing size.  A point on which even the singleton fails is
    returned as its own part without witness.  With ``equivariant`` the
    witness must commute with the group action on the cover.  ``budget``
    bounds the number of subsets tested; beyond it remaining points become
    singleton parts.
    """
    if c.degree != 1:
        raise CochainError("trivialize_locally expects a 1-cocycle")
    chk = verify_cocycle(c)
    if not chk:
        raise CochainError(f"not a cocycle; coboundary nontrivial at {c.labels(chk.first)}", chk.first)
    cover = c.cover
    uncovered = list(range(len(cover.base)))
    parts: list[TrivialPart] = []
    tested = 0
    exhausted = False

    def attempt(S):
        sub, keep = cover.restrict(S)
        cc = restrict_cochain(c, sub, keep)
        if equivariant and sub.group is None:
            return None
        return solve_coboundary(cc, equivariant=equivariant)

    while uncovered:
        x0 = uncovered[0]
        rest = uncovered[1:]
        found = None
        for size in range(len(uncovered), 0, -1):
            for extra in itertools.combinations(rest, size - 1):
                S = (x0,) + extra
                if equivariant and not _orbit_closed(cover, S):
                    continue
                if tested >= budget:
                    exhausted = True
                    break
                tested += 1
                w = attempt(S)
                if w is not None:
                    found = (S, w)
                    break
            if found or exhausted:
                break
        if found:
            S, w = found
        else:
            S, w = (x0,), None
            if equivariant and cover.group is not None:
                S = tuple(sorted({cover.base_action[g][x0] for g in cover.group.elements}))
        parts.append(TrivialPart(tuple(cover.base[x] for x in S), w))
        uncovered = [x for x in uncovered if x not in S]
    return Trivialization(parts, tested, exhausted)


# ------------------------------------------------------------ mu_n reduction


class MuNError(ValueError):
    pass


@dataclass
class CentralExtension:
    """``1 -> Z/n -> H -> G -> 1`` given by a normalized-or-not 2-cocycle ``f`` with trivial action.

    ``table`` is the multiplication of H on pairs ``(a, g)`` indexed ``a * |G| + g``:
    ``(a, g)(b, h) = (a + b + f(g, h), gh)``.
    """

    n: int
    group: FiniteGroupTable
    cocycle: dict
    cls: CohomologyClass
    table: FiniteGroupTable

    @property
    def is_split(self) -> bool:
        return self.cls.is_zero


@dataclass
class MuNReduction:
    cover: CombCover
    mu_cocycle: Cochain
    correction: Cochain
    ambient: AbelianGroup
    extension: CentralExtension
    fiber_classes: dict = field(default_factory=dict)


def extension_group(n: int, G: FiniteGroupTable, f: dict) -> FiniteGroupTable:
    o = G.order
    table = []
    for x in range(n * o):
        a, g = divmod(x, o)
        row = []
        for y in range(n * o):
            b, h = divmod(y, o)
            c = (a + b + f[(g, h)][0]) % n
            row.append(c * o + G.mul(g, h))
        table.append(row)
    # identity is (-f(e,e), e)
    e = G.identity
    ident = ((-f[(e, e)][0]) % n) * o + e
    return FiniteGroupTable(tuple(map(tuple, table)), identity=ident)


def mu_n_reduce(beta: Cochain, gamma: Cochain, n: int) -> MuNReduction:
    """Reduce ``beta`` with ``d(gamma) = beta^n`` to a mu_n-valued cocycle and a group extension.

    Coefficients must be ``Z/N`` with trivial action.  They are embedded in
    ``Z/nN`` by ``x -> n x``, where ``eta = gamma`` (integer representatives)
    is an n-th root of the image of gamma.  Then ``n beta - d(eta)`` is
    divisible by N and ``beta' = (n beta - d eta) / N mod n`` is the
    mu_n-valued cocycle; in ``Z/nN``, ``n beta = N beta' + d(eta)``.

    The cover must be a torsor: its group acts trivially on the base and
    simply transitively on every fiber, and beta, gamma must be invariant.
    Over a fiber with base sheet y the invariant cocycle gives the group
    cocycle ``f(a, b) = beta'(y, a y, ab y)``; all fibers must give the same
    class, which is the extension class.
    """
    if n < 1:
        raise MuNError("n must be positive")
    A = beta.group
    if not isinstance(A, AbelianGroup) or A.rank != 1 or A.moduli[0] <= 0 or A.action is not None:
        raise MuNError("coefficients must be a finite cyclic group Z/N with trivial action")
    if gamma.group != A or gamma.cover != beta.cover or beta.degree != 2 or gamma.degree != 1:
        raise MuNError("need a 2-cochain beta and a 1-cochain gamma on the same cover and group")
    cover = beta.cover
    N = A.moduli[0]
    dg = coboundary(gamma)
    for t, v in beta.values.items():
        if (n * v[0] - dg.values[t][0]) % N:
            raise MuNError(f"d(gamma) differs from beta^n at {beta.labels(t)}")
    if not cover.is_torsor():
        raise MuNError(
            "no admissible refinement: the cover is not a torsor under its group "
            "(a group acting trivially on the base and simply transitively on fibers is required)"
        )
    G = cover.group
    for g in G.elements:
        if twist(beta, g) != beta or twist(gamma, g) != gamma:
            raise MuNError(f"beta and gamma must be invariant under the torsor group (fails for element {g})")

    big = AbelianGroup((n * N,))
    mu = AbelianGroup((n,))
    eta = Cochain(cover, 1, big, {t: (v[0],) for t, v in gamma.values.items()})
    deta = coboundary(Cochain(cover, 1, AbelianGroup((0,)), {t: (v[0],) for t, v in gamma.values.items()}))
    mu_vals = {}
    for t, v in beta.values.items():
        num = n * v[0] - deta.values[t][0]
        if num % N:
            raise MuNError("internal: n beta - d eta not divisible by N")
        mu_vals[t] = ((num // N) % n,)
    mu_c = Cochain(cover, 2, mu, mu_vals)

    trivial_mod = GLattice.trivial(G, 1, (n,))
    H2 = cohomology_group(G, trivial_mod, 2)
    classes = {}
    first = None
    for x in range(len(cover.base)):
        y = cover.fiber(x)[0]
        act = cover.total_action
        f = {(a, b): mu_c.values[(y, act[a][y], act[G.mul(a, b)][y])] for a in G.elements for b in G.elements}
        cl = H2.classify(f)
        classes[cover.base[x]] = cl.coordinates
        if first is None:
            first = (f, cl)
        elif cl.coordinates != first[1].coordinates:
            raise MuNError(
                f"fibers over {cover.base[0]!r} and {cover.base[x]!r} give different extension classes"
            )
    f, cl = first
    ext = CentralExtension(n, G, f, cl, extension_group(n, G, f))
    return MuNReduction(cover, mu_c, eta, big, ext, classes)
