"""Finite groups given by multiplication tables."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence


class GroupTableError(ValueError):
    """Invalid multiplication table; ``witness`` names the offending entry."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class FiniteGroupTable:
    """Group on ``range(order)``; ``table[a][b]`` is the index of ``a*b``."""

    table: tuple[tuple[int, ...], ...]
    identity: int = 0
    names: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        t = tuple(tuple(int(x) for x in row) for row in self.table)
        object.__setattr__(self, "table", t)
        n = len(t)
        if n == 0:
            raise GroupTableError("group must have positive order")
        rng = set(range(n))
        for a, row in enumerate(t):
            if len(row) != n or set(row) != rng:
                raise GroupTableError(f"row {a} is not a permutation of 0..{n - 1}", witness=("row", a))
        for b in range(n):
            if {t[a][b] for a in range(n)} != rng:
                raise GroupTableError(f"column {b} is not a permutation", witness=("column", b))
        e = self.identity
        if not 0 <= e < n or any(t[e][a] != a or t[a][e] != a for a in range(n)):
            raise GroupTableError(f"{e} is not a two-sided identity", witness=("identity", e))
        for a, b, c in itertools.product(range(n), repeat=3):
            if t[t[a][b]][c] != t[a][t[b][c]]:
                raise GroupTableError(f"associativity fails at ({a}, {b}, {c})", witness=(a, b, c))
        if not self.names:
            object.__setattr__(self, "names", tuple(str(i) for i in range(n)))
        inv = [next(b for b in range(n) if t[a][b] == e) for a in range(n)]
        object.__setattr__(self, "_inverse", tuple(inv))

    @property
    def order(self) -> int:
        return len(self.table)

    @property
    def elements(self) -> range:
        return range(self.order)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self._inverse[a]

    def power(self, a: int, k: int) -> int:
        out = self.identity
        base = a if k >= 0 else self.inv(a)
        for _ in range(abs(k)):
            out = self.table[out][base]
        return out

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.table[x][a]
            k += 1
        return k

    def is_abelian(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in self.elements for b in self.elements)

    def is_subgroup(self, sub: Sequence[int]) -> bool:
        s = set(sub)
        return self.identity in s and all(self.table[a][b] in s for a in s for b in s)

    def is_normal(self, sub: Sequence[int]) -> bool:
        s = set(sub)
        if not self.is_subgroup(s):
            return False
        return all(self.mul(self.mul(g, h), self.inv(g)) in s for g in self.elements for h in s)

    def quotient(self, sub: Sequence[int]) -> tuple["FiniteGroupTable", tuple[int, ...]]:
        """Quotient by a normal subgroup: the table of G/N and the projection G -> G/N."""
        if not self.is_normal(sub):
            raise GroupTableError("subgroup is not normal", witness=tuple(sorted(sub)))
        s = sorted(set(sub))
        cosets: list[frozenset[int]] = []
        proj = [-1] * self.order
        for g in self.elements:
            if proj[g] >= 0:
                continue
            coset = frozenset(self.mul(g, h) for h in s)
            for x in coset:
                proj[x] = len(cosets)
            cosets.append(coset)
        reps = [min(c) for c in cosets]
        table = [[proj[self.mul(a, b)] for b in reps] for a in reps]
        return FiniteGroupTable(tuple(map(tuple, table)), identity=proj[self.identity]), tuple(proj)

    def relabel(self, perm: Sequence[int]) -> "FiniteGroupTable":
        """Isomorphic copy in which element ``a`` becomes ``perm[a]``."""
        n = self.order
        inv = [0] * n
        for a, pa in enumerate(perm):
            inv[pa] = a
        table = [[perm[self.table[inv[x]][inv[y]]] for y in range(n)] for x in range(n)]
        return FiniteGroupTable(tuple(map(tuple, table)), identity=perm[self.identity])

    # ------------------------------------------------------------ constructors

    @classmethod
    def cyclic(cls, n: int) -> "FiniteGroupTable":
        return cls(tuple(tuple((a + b) % n for b in range(n)) for a in range(n)))

    @classmethod
    def trivial(cls) -> "FiniteGroupTable":
        return cls.cyclic(1)

    @classmethod
    def product(cls, g: "FiniteGroupTable", h: "FiniteGroupTable") -> "FiniteGroupTable":
        """Direct product; element (a, b) has index a * |H| + b."""
        m = h.order
        n = g.order * m
        table = [
            [g.mul(x // m, y // m) * m + h.mul(x % m, y % m) for y in range(n)] for x in range(n)
        ]
        return cls(tuple(map(tuple, table)), identity=g.identity * m + h.identity)

    @classmethod
    def from_permutations(cls, perms: Sequence[Sequence[int]]) -> "FiniteGroupTable":
        """Group of the given permutations (listed in that order; must be closed)."""
        ps = [tuple(p) for p in perms]
        index = {p: i for i, p in enumerate(ps)}
        ident = tuple(range(len(ps[0])))
        if ident not in index:
            raise GroupTableError("permutation list lacks the identity")
        table = []
        for a in ps:
            row = []
            for b in ps:
                comp = tuple(a[b[i]] for i in range(len(a)))  # (a*b)(i) = a(b(i))
                if comp not in index:
                    raise GroupTableError("permutation list is not closed", witness=(index[a], index[b]))
                row.append(index[comp])
            table.append(row)
        return cls(tuple(map(tuple, table)), identity=index[ident])

    @classmethod
    def symmetric(cls, d: int) -> tuple["FiniteGroupTable", list[tuple[int, ...]]]:
        perms = sorted(itertools.permutations(range(d)))
        return cls.from_permutations(perms), perms
