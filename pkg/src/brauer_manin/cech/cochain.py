"""Cochains on combinatorial covers and the alternating coboundary.

A p-cochain assigns a coefficient to every (p+1)-tuple of sheets with a
common base point, degenerate tuples included.  With multiplicative notation

    (dc)(t_0, ..., t_{p+1}) = prod_i c(t_0, ..., ^t_i, ..., t_{p+1})^{(-1)^i}

so a 0-cochain f has (df)(y, y') = f(y') / f(y).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Optional, Sequence

from ..exact.linsolve import solve_integer
from .coefficients import AbelianGroup, CoefficientGroup
from .cover import CombCover, CoverError


class CochainError(ValueError):
    def __init__(self, message: str, tuple_=None):
        super().__init__(message)
        self.tuple = tuple_


@dataclass(frozen=True, eq=False)
class Cochain:
    """Degree-``degree`` cochain; ``values`` maps index tuples of length degree+1 to coefficients."""

    cover: CombCover
    degree: int
    group: CoefficientGroup
    values: Mapping[tuple[int, ...], object]

    def __post_init__(self):
        if self.degree < 0:
            raise CochainError("degree must be nonnegative")
        tuples = self.cover.tuples(self.degree)
        vals = {}
        for t in tuples:
            if t not in self.values:
                raise CochainError(f"cochain is missing the tuple {self.labels(t)}", t)
            vals[t] = self.group.normalize(self.values[t])
        if len(vals) != len(self.values):
            extra = next(t for t in self.values if t not in vals)
            raise CochainError(f"tuple {extra} is not in the fiber power", extra)
        object.__setattr__(self, "values", vals)

    # ------------------------------------------------------------ construction

    @classmethod
    def from_function(cls, cover: CombCover, degree: int, group: CoefficientGroup, fn: Callable) -> "Cochain":
        """Build from ``fn(index_tuple)``."""
        return cls(cover, degree, group, {t: fn(t) for t in cover.tuples(degree)})

    @classmethod
    def trivial(cls, cover: CombCover, degree: int, group: CoefficientGroup) -> "Cochain":
        e = group.identity()
        return cls.from_function(cover, degree, group, lambda t: e)

    @classmethod
    def constant(cls, cover: CombCover, degree: int, group: CoefficientGroup, value) -> "Cochain":
        return cls.from_function(cover, degree, group, lambda t: value)

    @classmethod
    def from_labels(cls, cover: CombCover, degree: int, group: CoefficientGroup, table: Mapping) -> "Cochain":
        """Build from a table keyed by tuples of sheet labels."""
        vals = {}
        for key, v in table.items():
            vals[tuple(cover.index(y) for y in key)] = v
        return cls(cover, degree, group, vals)

    # ------------------------------------------------------------ access

    def labels(self, t: Sequence[int]) -> tuple:
        return tuple(self.cover.total[i] for i in t)

    def __getitem__(self, t):
        return self.values[tuple(t)]

    def at(self, *labels):
        """Value at a tuple given by sheet labels."""
        return self.values[tuple(self.cover.index(y) for y in labels)]

    def items(self):
        return self.values.items()

    def __eq__(self, other):
        return (
            isinstance(other, Cochain)
            and self.cover == other.cover
            and self.degree == other.degree
            and self.values == other.values
        )

    def __hash__(self):
        return hash((self.degree, tuple(sorted(self.values.items(), key=lambda kv: kv[0]))))

    def is_trivial(self) -> bool:
        e = self.group.identity()
        return all(v == e for v in self.values.values())

    # ------------------------------------------------------------ arithmetic

    def _check_same(self, other: "Cochain"):
        if self.cover != other.cover or self.degree != other.degree:
            raise CochainError("cochains live on different covers or degrees")

    def __mul__(self, other: "Cochain") -> "Cochain":
        self._check_same(other)
        op = self.group.op
        return Cochain(self.cover, self.degree, self.group, {t: op(v, other.values[t]) for t, v in self.values.items()})

    def __truediv__(self, other: "Cochain") -> "Cochain":
        self._check_same(other)
        dv = self.group.div
        return Cochain(self.cover, self.degree, self.group, {t: dv(v, other.values[t]) for t, v in self.values.items()})

    def inverse(self) -> "Cochain":
        return Cochain(self.cover, self.degree, self.group, {t: self.group.inv(v) for t, v in self.values.items()})

    def __pow__(self, k: int) -> "Cochain":
        return Cochain(self.cover, self.degree, self.group, {t: self.group.power(v, k) for t, v in self.values.items()})

    def map_values(self, group: CoefficientGroup, fn: Callable) -> "Cochain":
        return Cochain(self.cover, self.degree, group, {t: fn(v) for t, v in self.values.items()})


def coboundary(c: Cochain) -> Cochain:
    """Alternating product over the face maps."""
    G = c.group
    vals = c.values
    p = c.degree
    out = {}
    for t in c.cover.tuples(p + 1):
        acc = G.identity()
        for i in range(p + 2):
            v = vals[t[:i] + t[i + 1 :]]
            acc = G.op(acc, v if i % 2 == 0 else G.inv(v))
        out[t] = acc
    return Cochain(c.cover, p + 1, G, out)


@dataclass
class CocycleCheck:
    ok: bool
    failing: list[tuple[int, ...]]
    first: Optional[tuple[int, ...]] = None

    def __bool__(self):
        return self.ok


def verify_cocycle(c: Cochain, limit: int = 16) -> CocycleCheck:
    """Whether ``dc`` is trivial, with up to ``limit`` failing tuples (first one separately)."""
    G = c.group
    e = G.identity()
    bad = []
    for t, v in coboundary(c).values.items():
        if v != e:
            bad.append(t)
            if len(bad) >= limit:
                break
    return CocycleCheck(not bad, bad, bad[0] if bad else None)


def twist(c: Cochain, g: int) -> Cochain:
    """Semilinear translate: ``(g c)(t) = g . c(g^{-1} t)``."""
    cov = c.cover
    if cov.group is None:
        raise CoverError("cover carries no group action")
    ginv = cov.group.inv(g)
    return Cochain.from_function(cov, c.degree, c.group, lambda t: c.group.act(g, c.values[cov.act_tuple(ginv, t)]))


def pullback(c: Cochain, target: CombCover, phi: Sequence[int]) -> Cochain:
    """Pull back along a refinement ``phi``: sheet index of ``target`` -> sheet index of ``c.cover``."""
    check_refinement(target, c.cover, phi)
    return Cochain.from_function(target, c.degree, c.group, lambda t: c.values[tuple(phi[i] for i in t)])


def check_refinement(Y: CombCover, Z: CombCover, phi: Sequence[int]) -> None:
    """``phi: Y -> Z`` lies over the base: supp(y) is contained in supp(phi(y))."""
    if len(phi) != Y.size:
        raise CoverError("refinement map must be defined on every sheet")
    zpos = {x: i for i, x in enumerate(Z.base)}
    for i, j in enumerate(phi):
        if not 0 <= j < Z.size:
            raise CoverError(f"refinement map sends {Y.total[i]!r} outside the target")
        ys = {Y.base[x] for x in Y.support[i]}
        zs = {Z.base[x] for x in Z.support[j]}
        if not ys <= zs:
            raise CoverError(
                f"maps do not commute over the base at sheet {Y.total[i]!r}: "
                f"{sorted(map(str, ys - zs))} not under {Z.total[j]!r}"
            )
    if any(x not in zpos for x in Y.base):
        raise CoverError("refinement covers base points missing from the target")


def restrict_cochain(c: Cochain, sub: CombCover, keep: Sequence[int]) -> Cochain:
    """Restrict to a sub-cover given with its sheet map (as returned by ``CombCover.restrict``)."""
    return Cochain.from_function(sub, c.degree, c.group, lambda t: c.values[tuple(keep[i] for i in t)])


# ------------------------------------------------------------ linear algebra


def _require_abelian(group) -> AbelianGroup:
    if not isinstance(group, AbelianGroup):
        raise CochainError("linear solving needs AbelianGroup coefficients")
    return group


def coboundary_rows(cover: CombCover, p: int, rank: int) -> list[dict[int, int]]:
    """Sparse rows of d: C^p -> C^{p+1}; coordinate ``tuple_index * rank + component``."""
    idx = cover.tuple_index(p)
    rows = []
    for t in cover.tuples(p + 1):
        for k in range(rank):
            row: dict[int, int] = {}
            for i in range(p + 2):
                col = idx[t[:i] + t[i + 1 :]] * rank + k
                nv = row.get(col, 0) + (1 if i % 2 == 0 else -1)
                if nv:
                    row[col] = nv
                else:
                    row.pop(col, None)
            rows.append(row)
    return rows


def to_vector(c: Cochain) -> list[int]:
    out: list[int] = []
    for t in c.cover.tuples(c.degree):
        out.extend(c.values[t])
    return out


def from_vector(cover: CombCover, p: int, group: AbelianGroup, vec: Sequence[int]) -> Cochain:
    r = group.rank
    return Cochain(cover, p, group, {t: tuple(vec[i * r : (i + 1) * r]) for i, t in enumerate(cover.tuples(p))})


def equivariance_rows(cover: CombCover, p: int, group: AbelianGroup) -> tuple[list[dict[int, int]], list[int]]:
    """Rows (and their moduli) expressing ``b(g t) = g . b(t)`` for all g and p-tuples t."""
    if cover.group is None:
        raise CoverError("cover carries no group action")
    idx = cover.tuple_index(p)
    r = group.rank
    rows, mods = [], []
    for g in cover.group.elements:
        A = group.action[g] if group.action is not None else [[int(i == j) for j in range(r)] for i in range(r)]
        for t, n in idx.items():
            m = idx[cover.act_tuple(g, t)]
            for k in range(r):
                row: dict[int, int] = {m * r + k: 1}
                for j in range(r):
                    if A[k][j]:
                        key = n * r + j
                        nv = row.get(key, 0) - A[k][j]
                        if nv:
                            row[key] = nv
                        else:
                            row.pop(key, None)
                if row:
                    rows.append(row)
                    mods.append(group.moduli[k])
    return rows, mods


def solve_coboundary(c: Cochain, equivariant: bool = False) -> Optional[Cochain]:
    """A (p-1)-cochain b with db = c, or None.  ``equivariant`` also demands g.b = b."""
    G = _require_abelian(c.group)
    p = c.degree
    if p == 0:
        raise CochainError("a 0-cochain is never a coboundary")
    r = G.rank
    cover = c.cover
    rows = coboundary_rows(cover, p - 1, r)
    rhs = to_vector(c)
    mods = [G.moduli[k % r] for k in range(len(rhs))]
    if equivariant:
        eq, eq_mods = equivariance_rows(cover, p - 1, G)
        rows = rows + eq
        rhs = rhs + [0] * len(eq)
        mods = mods + eq_mods
    ncols = len(cover.tuples(p - 1)) * r
    x = solve_integer(rows, rhs, ncols, mods)
    if x is None:
        return None
    return from_vector(cover, p - 1, G, x)


def is_coboundary(c: Cochain, equivariant: bool = False) -> bool:
    return solve_coboundary(c, equivariant) is not None
