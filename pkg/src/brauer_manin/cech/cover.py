"""Finite combinatorial covers.

A cover is a finite set of sheets, each with a nonempty *support*: the set of
base points it lies over.  A (p+1)-tuple of sheets belongs to the p-th fiber
power when the supports have a common point; the support of the tuple is the
intersection.  The classical finite surjection ``total -> base`` is the case
of singleton supports (see ``CombCover.from_projection``), where fiber powers
are tuples with equal projection.  Larger supports model open sets of a
Zariski-type cover and let the cochain complex carry nonzero cohomology.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable, Mapping, Optional, Sequence

from ..cohomology.groups import FiniteGroupTable

Label = Hashable


class CoverError(ValueError):
    pass


@dataclass(frozen=True)
class CombCover:
    """Sheets ``total[i]`` over base points ``support[i]`` (indices into ``base``).

    ``group`` optionally acts through ``base_action[g]`` and ``total_action[g]``
    (permutations of indices), with ``support(g.y) = g.support(y)``.
    ``pieces`` optionally records two base subsets whose union is the base.
    """

    base: tuple
    total: tuple
    support: tuple[frozenset[int], ...]
    pieces: Optional[tuple[frozenset[int], frozenset[int]]] = None
    group: Optional[FiniteGroupTable] = None
    base_action: tuple[tuple[int, ...], ...] = ()
    total_action: tuple[tuple[int, ...], ...] = ()
    _index: dict = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        nb, nt = len(self.base), len(self.total)
        if len(set(self.base)) != nb or len(set(self.total)) != nt:
            raise CoverError("labels must be distinct")
        if len(self.support) != nt:
            raise CoverError("one support per sheet is required")
        sup = tuple(frozenset(s) for s in self.support)
        object.__setattr__(self, "support", sup)
        for i, s in enumerate(sup):
            if not s:
                raise CoverError(f"sheet {self.total[i]!r} has empty support")
            if not all(0 <= x < nb for x in s):
                raise CoverError(f"sheet {self.total[i]!r} lies over an unknown base point")
        covered = set().union(*sup) if sup else set()
        if covered != set(range(nb)):
            missing = [self.base[x] for x in range(nb) if x not in covered]
            raise CoverError(f"cover is not surjective: nothing over {missing}")
        if self.pieces is not None:
            p1, p2 = (frozenset(p) for p in self.pieces)
            if p1 | p2 != frozenset(range(nb)):
                raise CoverError("pieces must cover the base")
            object.__setattr__(self, "pieces", (p1, p2))
        if self.group is not None:
            G = self.group
            ba = tuple(tuple(p) for p in self.base_action)
            ta = tuple(tuple(p) for p in self.total_action)
            if len(ba) != G.order or len(ta) != G.order:
                raise CoverError("one base and one total permutation per group element")
            for g in G.elements:
                if sorted(ba[g]) != list(range(nb)) or sorted(ta[g]) != list(range(nt)):
                    raise CoverError(f"action of element {g} is not a permutation")
                for i in range(nt):
                    if sup[ta[g][i]] != frozenset(ba[g][x] for x in sup[i]):
                        raise CoverError(
                            f"action of element {g} does not commute with the projection at sheet {self.total[i]!r}"
                        )
            for g in G.elements:
                for h in G.elements:
                    gh = G.mul(g, h)
                    if any(ta[g][ta[h][i]] != ta[gh][i] for i in range(nt)) or any(
                        ba[g][ba[h][x]] != ba[gh][x] for x in range(nb)
                    ):
                        raise CoverError(f"action is not a homomorphism at ({g}, {h})")
            object.__setattr__(self, "base_action", ba)
            object.__setattr__(self, "total_action", ta)
        object.__setattr__(self, "_index", {y: i for i, y in enumerate(self.total)})

    # ------------------------------------------------------------ constructors

    @classmethod
    def from_projection(
        cls,
        base: Sequence[Label],
        projection: Mapping[Label, Label],
        **kw,
    ) -> "CombCover":
        """Cover given by a surjection ``total -> base`` (keys of ``projection`` in order)."""
        bidx = {x: i for i, x in enumerate(base)}
        total = tuple(projection)
        try:
            sup = tuple(frozenset([bidx[projection[y]]]) for y in total)
        except KeyError as exc:
            raise CoverError(f"projection lands outside the base: {exc.args[0]!r}") from None
        return cls(tuple(base), total, sup, **kw)

    @classmethod
    def from_supports(cls, base: Sequence[Label], supports: Mapping[Label, Iterable[Label]], **kw) -> "CombCover":
        bidx = {x: i for i, x in enumerate(base)}
        total = tuple(supports)
        return cls(tuple(base), total, tuple(frozenset(bidx[x] for x in supports[y]) for y in total), **kw)

    def with_group(self, group: FiniteGroupTable, base_action, total_action) -> "CombCover":
        return CombCover(self.base, self.total, self.support, self.pieces, group, tuple(base_action), tuple(total_action))

    def with_pieces(self, piece1: Iterable[Label], piece2: Iterable[Label]) -> "CombCover":
        b = {x: i for i, x in enumerate(self.base)}
        return CombCover(
            self.base,
            self.total,
            self.support,
            (frozenset(b[x] for x in piece1), frozenset(b[x] for x in piece2)),
            self.group,
            self.base_action,
            self.total_action,
        )

    # ------------------------------------------------------------ queries

    @property
    def size(self) -> int:
        return len(self.total)

    def index(self, label: Label) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise CoverError(f"unknown sheet {label!r}") from None

    def tuple_support(self, t: Sequence[int]) -> frozenset[int]:
        s = self.support[t[0]]
        for i in t[1:]:
            s = s & self.support[i]
        return s

    def tuples(self, p: int) -> tuple[tuple[int, ...], ...]:
        """All (p+1)-tuples of sheet indices with a common base point, in lexicographic order."""
        return self._tuples_cache(p)

    @cached_property
    def _tuple_store(self) -> dict:
        return {}

    def _tuples_cache(self, p: int):
        store = self._tuple_store
        if p not in store:
            out = []
            sup = self.support
            n = self.size

            def extend(prefix, common):
                if len(prefix) == p + 1:
                    out.append(tuple(prefix))
                    return
                for i in range(n):
                    c = common & sup[i] if common is not None else sup[i]
                    if c:
                        prefix.append(i)
                        extend(prefix, c)
                        prefix.pop()

            extend([], None)
            store[p] = tuple(out)
        return store[p]

    def tuple_index(self, p: int) -> dict[tuple[int, ...], int]:
        key = ("index", p)
        store = self._tuple_store
        if key not in store:
            store[key] = {t: i for i, t in enumerate(self.tuples(p))}
        return store[key]

    def fiber(self, x: int) -> tuple[int, ...]:
        """Sheets lying over base point index ``x``."""
        return tuple(i for i, s in enumerate(self.support) if x in s)

    def act_tuple(self, g: int, t: Sequence[int]) -> tuple[int, ...]:
        a = self.total_action[g]
        return tuple(a[i] for i in t)

    def is_torsor(self) -> bool:
        """Group acts trivially on the base and simply transitively on each fiber."""
        if self.group is None:
            return False
        G = self.group
        if any(self.base_action[g][x] != x for g in G.elements for x in range(len(self.base))):
            return False
        for x in range(len(self.base)):
            fib = self.fiber(x)
            if len(fib) != G.order:
                return False
            y0 = fib[0]
            if {self.total_action[g][y0] for g in G.elements} != set(fib):
                return False
        return all(len(s) == 1 for s in self.support)

    # ------------------------------------------------------------ constructions

    def restrict(self, base_subset: Iterable[int]) -> tuple["CombCover", tuple[int, ...]]:
        """Sub-cover over a set of base indices, with the map new sheet index -> old index."""
        S = frozenset(base_subset)
        keep = [i for i, s in enumerate(self.support) if s & S]
        bkeep = sorted(S)
        bpos = {x: n for n, x in enumerate(bkeep)}
        sup = tuple(frozenset(bpos[x] for x in self.support[i] & S) for i in keep)
        cov = CombCover(tuple(self.base[x] for x in bkeep), tuple(self.total[i] for i in keep), sup)
        if self.group is not None and all(frozenset(self.base_action[g][x] for x in S) == S for g in self.group.elements):
            pos = {i: n for n, i in enumerate(keep)}
            ba = tuple(tuple(bpos[self.base_action[g][x]] for x in bkeep) for g in self.group.elements)
            ta = tuple(tuple(pos[self.total_action[g][i]] for i in keep) for g in self.group.elements)
            cov = cov.with_group(self.group, ba, ta)
        return cov, tuple(keep)

    def piece(self, which: int) -> tuple["CombCover", tuple[int, ...]]:
        if self.pieces is None:
            raise CoverError("pieces are not set on this cover")
        return self.restrict(self.pieces[which - 1])


def _merge_bases(a: CombCover, b: CombCover):
    base = list(a.base)
    pos = {x: i for i, x in enumerate(base)}
    for x in b.base:
        if x not in pos:
            pos[x] = len(base)
            base.append(x)
    return tuple(base), [pos[x] for x in a.base], [pos[x] for x in b.base]


def disjoint_union(a: CombCover, b: CombCover, tags=(1, 2)) -> CombCover:
    """``a`` and ``b`` side by side over the union of their bases; sheets become ``(tag, label)``."""
    base, ma, mb = _merge_bases(a, b)
    total = tuple((tags[0], y) for y in a.total) + tuple((tags[1], y) for y in b.total)
    sup = tuple(frozenset(ma[x] for x in s) for s in a.support) + tuple(
        frozenset(mb[x] for x in s) for s in b.support
    )
    pieces = (frozenset(ma), frozenset(mb))
    return CombCover(base, total, sup, pieces)


def fiber_product(a: CombCover, b: CombCover) -> CombCover:
    """Pairs ``(y1, y2)`` whose supports meet; the base is the overlap of the two bases."""
    base, ma, mb = _merge_bases(a, b)
    overlap = sorted(set(ma) & set(mb))
    if not overlap:
        raise CoverError("the two covers lie over disjoint bases")
    opos = {x: n for n, x in enumerate(overlap)}
    total, sup = [], []
    for i, s1 in enumerate(a.support):
        g1 = {ma[x] for x in s1}
        for j, s2 in enumerate(b.support):
            common = g1 & {mb[x] for x in s2}
            if common:
                total.append((a.total[i], b.total[j]))
                sup.append(frozenset(opos[x] for x in common))
    return CombCover(tuple(base[x] for x in overlap), tuple(total), tuple(sup))


def simplicial_cover(vertices: Sequence[Label], simplices: Iterable[Iterable[Label]]) -> CombCover:
    """Open-star cover of a simplicial complex.

    Base points are the simplices (each face listed or implied by a maximal
    simplex); the sheet of a vertex lies over every simplex containing it, so
    fiber powers are exactly the tuples spanning a simplex.
    """
    faces: set[frozenset] = set()
    for s in simplices:
        s = frozenset(s)
        for r in range(1, len(s) + 1):
            for f in itertools.combinations(sorted(s, key=vertices.index), r):
                faces.add(frozenset(f))
    order = {v: i for i, v in enumerate(vertices)}
    base = sorted(faces, key=lambda f: (len(f), sorted(order[v] for v in f)))
    labels = tuple(tuple(sorted(f, key=order.__getitem__)) for f in base)
    supports = {v: [labels[k] for k, f in enumerate(base) if v in f] for v in vertices}
    return CombCover.from_supports(labels, supports)
