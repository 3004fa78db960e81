"""Finitely generated abelian groups Z^r / diag(moduli) with a finite group action."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from ..exact.smith import determinant, matmul
from .groups import FiniteGroupTable

Vector = tuple[int, ...]


class GModuleError(ValueError):
    pass


@dataclass(frozen=True)
class GLattice:
    """A G-module ``Z^rank / (m_1 Z + ... + m_rank Z)`` with ``action[g]`` integer matrices.

    ``moduli[i] == 0`` means the i-th coordinate is free; with all moduli zero
    this is a lattice and every action matrix must be unimodular.
    """

    group: FiniteGroupTable
    action: tuple[tuple[tuple[int, ...], ...], ...]
    moduli: tuple[int, ...] = ()
    label: str = field(default="", compare=False)

    def __post_init__(self):
        act = tuple(tuple(tuple(int(x) for x in row) for row in m) for m in self.action)
        object.__setattr__(self, "action", act)
        G = self.group
        if len(act) != G.order:
            raise GModuleError(f"need {G.order} action matrices, got {len(act)}")
        r = len(act[0]) if act else 0
        for g, m in enumerate(act):
            if len(m) != r or any(len(row) != r for row in m):
                raise GModuleError(f"action matrix for element {g} is not {r}x{r}")
        mods = tuple(int(m) for m in self.moduli) if self.moduli else (0,) * r
        if len(mods) != r or any(m < 0 for m in mods):
            raise GModuleError("moduli must be nonnegative, one per coordinate")
        object.__setattr__(self, "moduli", mods)
        # relation lattice must be stable: A (m_j e_j) lies in sum m_i Z e_i
        for g, m in enumerate(act):
            for i in range(r):
                for j in range(r):
                    if mods[i] and (m[i][j] * mods[j]) % mods[i]:
                        raise GModuleError(f"action of {g} does not preserve the relations")
                    if mods[i] == 0 and mods[j] and m[i][j]:
                        raise GModuleError(f"action of {g} maps torsion into the free part")
        ident = act[G.identity]
        for i in range(r):
            for j in range(r):
                if not self._cong(i, ident[i][j], int(i == j)):
                    raise GModuleError("identity element must act trivially", )
        for g in G.elements:
            for h in G.elements:
                prod = matmul([list(x) for x in act[g]], [list(x) for x in act[h]])
                gh = act[G.mul(g, h)]
                for i in range(r):
                    for j in range(r):
                        if not self._cong(i, prod[i][j], gh[i][j]):
                            raise GModuleError(
                                f"action is not a homomorphism at ({g}, {h})"
                            )
        if all(m == 0 for m in mods):
            for g, m in enumerate(act):
                if abs(determinant([list(x) for x in m])) != 1:
                    raise GModuleError(f"action matrix of {g} is not unimodular")

    def _cong(self, i: int, a: int, b: int) -> bool:
        m = self.moduli[i]
        return (a - b) % m == 0 if m else a == b

    @property
    def rank(self) -> int:
        return len(self.moduli)

    @property
    def is_lattice(self) -> bool:
        return all(m == 0 for m in self.moduli)

    def reduce(self, v: Sequence[int]) -> Vector:
        return tuple(x % m if m else x for x, m in zip(v, self.moduli))

    def zero(self) -> Vector:
        return (0,) * self.rank

    def act(self, g: int, v: Sequence[int]) -> Vector:
        m = self.action[g]
        return self.reduce(tuple(sum(a * x for a, x in zip(row, v)) for row in m))

    def add(self, u: Sequence[int], v: Sequence[int]) -> Vector:
        return self.reduce(tuple(a + b for a, b in zip(u, v)))

    def sub(self, u: Sequence[int], v: Sequence[int]) -> Vector:
        return self.reduce(tuple(a - b for a, b in zip(u, v)))

    def scale(self, k: int, v: Sequence[int]) -> Vector:
        return self.reduce(tuple(k * a for a in v))

    def relabel(self, group: FiniteGroupTable, perm: Sequence[int]) -> "GLattice":
        """Transport along the relabelling ``perm`` used for ``group = self.group.relabel(perm)``."""
        inv = [0] * len(perm)
        for a, pa in enumerate(perm):
            inv[pa] = a
        return GLattice(group, tuple(self.action[inv[x]] for x in range(len(perm))), self.moduli)

    # ------------------------------------------------------------ constructors

    @classmethod
    def trivial(cls, group: FiniteGroupTable, rank: int = 1, moduli: Sequence[int] = ()) -> "GLattice":
        eye = tuple(tuple(int(i == j) for j in range(rank)) for i in range(rank))
        return cls(group, (eye,) * group.order, tuple(moduli) or (0,) * rank)

    @classmethod
    def from_generator(cls, group: FiniteGroupTable, generator: int, matrix, moduli: Sequence[int] = ()) -> "GLattice":
        """Module for a cyclic group determined by the matrix of one generator."""
        m = [list(map(int, row)) for row in matrix]
        r = len(m)
        mods = tuple(moduli) or (0,) * r
        powers = {}
        cur = [[int(i == j) for j in range(r)] for i in range(r)]
        x = group.identity
        for _ in range(group.order):
            powers[x] = tuple(tuple(row) for row in cur)
            cur = matmul(m, cur)
            cur = [[v % mods[i] if mods[i] else v for v in row] for i, row in enumerate(cur)]
            x = group.mul(generator, x)
        if len(powers) != group.order:
            raise GModuleError("element is not a generator of the group")
        return cls(group, tuple(powers[g] for g in group.elements), mods)

    @classmethod
    def sign(cls, group: FiniteGroupTable, character: Sequence[int]) -> "GLattice":
        """Rank-one lattice with g acting by ``character[g]`` in {+1, -1}."""
        return cls(group, tuple(((int(c),),) for c in character))
