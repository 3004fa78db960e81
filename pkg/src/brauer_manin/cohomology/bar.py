"""Cohomology of finite groups through the inhomogeneous bar complex.

Cochains of degree n are dicts mapping n-tuples of element indices to
module vectors.  The coboundary is

    (df)(g1..g_{n+1}) = g1.f(g2..) + sum_i (-1)^i f(.., g_i g_{i+1}, ..) + (-1)^{n+1} f(g1..gn)
"""
from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Optional

from sympy import factorint

from ..exact.linsolve import solve_integer
from ..exact.smith import smith_form
from .groups import FiniteGroupTable
from .lattice import GLattice, Vector

MAX_DEGREE = 3

GroupCochain = dict[tuple[int, ...], Vector]


class NotACocycle(ValueError):
    def __init__(self, message: str, failing_tuple):
        super().__init__(message)
        self.failing_tuple = failing_tuple


def _check_degree(i: int, low: int = 0) -> None:
    if not low <= i <= MAX_DEGREE:
        raise ValueError(f"degree {i} outside {low}..{MAX_DEGREE}")


def cochain_tuples(G: FiniteGroupTable, n: int):
    return itertools.product(range(G.order), repeat=n)


def zero_cochain(G: FiniteGroupTable, M: GLattice, n: int) -> GroupCochain:
    z = M.zero()
    return {t: z for t in cochain_tuples(G, n)}


def coboundary(G: FiniteGroupTable, M: GLattice, f: GroupCochain, n: int) -> GroupCochain:
    out: GroupCochain = {}
    r = M.rank
    for t in cochain_tuples(G, n + 1):
        acc = list(M.act(t[0], f[t[1:]]))
        for i in range(1, n + 1):
            merged = t[: i - 1] + (G.mul(t[i - 1], t[i]),) + t[i + 1 :]
            sgn = -1 if i % 2 else 1
            v = f[merged]
            for k in range(r):
                acc[k] += sgn * v[k]
        sgn = -1 if (n + 1) % 2 else 1
        v = f[t[:n]]
        for k in range(r):
            acc[k] += sgn * v[k]
        out[t] = M.reduce(acc)
    return out


def first_cocycle_failure(G, M, f: GroupCochain, n: int):
    """First tuple where ``df`` is nonzero, or None."""
    z = M.zero()
    for t, v in coboundary(G, M, f, n).items():
        if v != z:
            return t
    return None


def is_cocycle(G, M, f, n) -> bool:
    return first_cocycle_failure(G, M, f, n) is None


# ------------------------------------------------------------- matrices


def _tuple_index(t, order: int) -> int:
    idx = 0
    for g in t:
        idx = idx * order + g
    return idx


@lru_cache(maxsize=64)
def coboundary_rows(G: FiniteGroupTable, M: GLattice, n: int) -> tuple[dict[int, int], ...]:
    """Sparse rows of d^n : C^n -> C^{n+1}; coordinates ``tuple_index * rank + component``."""
    r = M.rank
    o = G.order
    rows = []
    for t in cochain_tuples(G, n + 1):
        base_rows = [dict() for _ in range(r)]

        def add(col_t, k_row, k_col, val):
            if val:
                key = _tuple_index(col_t, o) * r + k_col
                d = base_rows[k_row]
                nv = d.get(key, 0) + val
                if nv:
                    d[key] = nv
                else:
                    d.pop(key, None)

        a = M.action[t[0]]
        for c in range(r):
            for k in range(r):
                add(t[1:], c, k, a[c][k])
        for i in range(1, n + 1):
            merged = t[: i - 1] + (G.mul(t[i - 1], t[i]),) + t[i + 1 :]
            for c in range(r):
                add(merged, c, c, -1 if i % 2 else 1)
        for c in range(r):
            add(t[:n], c, c, -1 if (n + 1) % 2 else 1)
        rows.extend(base_rows)
    return tuple(rows)


def cochain_to_vector(G, M, f: GroupCochain, n: int) -> list[int]:
    out = []
    for t in cochain_tuples(G, n):
        out.extend(f[t])
    return out


def vector_to_cochain(G, M, v, n: int) -> GroupCochain:
    r = M.rank
    return {t: M.reduce(v[i * r : (i + 1) * r]) for i, t in enumerate(cochain_tuples(G, n))}


def sparse_elementary_divisors(rows, ncols: int) -> list[int]:
    """Nonzero Smith invariants of a sparse integer matrix (no transforms).

    A pivot ``a`` is eliminated by Schur complement whenever it divides every
    entry of its row and of its column, shortest rows first; whatever remains
    goes through the dense Smith form.  The collected diagonal is then put in
    divisibility order prime by prime.
    """
    R: dict[int, dict[int, int]] = {i: dict(row) for i, row in enumerate(rows) if row}
    cols: dict[int, set[int]] = {}
    for i, row in R.items():
        for j in row:
            cols.setdefault(j, set()).add(i)
    heap = [(len(row), i) for i, row in R.items()]
    heapq.heapify(heap)
    diag: list[int] = []
    while heap:
        ln, i = heapq.heappop(heap)
        row = R.get(i)
        if row is None or len(row) != ln:
            continue
        j = _divisible_pivot(R, cols, row)
        if j is None:
            continue
        a = row[j]
        for s in list(cols[j]):
            if s == i:
                continue
            rs = R[s]
            f = rs[j] // a
            for k, v in row.items():
                nv = rs.get(k, 0) - f * v
                if nv:
                    if k not in rs:
                        cols[k].add(s)
                    rs[k] = nv
                elif k in rs:
                    del rs[k]
                    cols[k].discard(s)
            if rs:
                heapq.heappush(heap, (len(rs), s))
            else:
                del R[s]
        for k in row:
            cols[k].discard(i)
        del R[i]
        diag.append(abs(a))
    rest = [i for i in R if R[i]]
    if rest:
        cidx = sorted({j for i in rest for j in R[i]})
        pos = {j: n for n, j in enumerate(cidx)}
        dense = [[0] * len(cidx) for _ in rest]
        for n_, i in enumerate(rest):
            for j, v in R[i].items():
                dense[n_][pos[j]] = v
        diag.extend(d for d in smith_form(dense, len(rest), len(cidx)).diagonal if d)
    return diagonal_invariants(diag)


def _divisible_pivot(R, cols, row):
    best = None
    for c, v in sorted(row.items(), key=lambda kv: abs(kv[1])):
        if best is not None and abs(v) > abs(row[best]):
            break
        if any(x % v for x in row.values()):
            break
        if abs(v) == 1 or all(R[s][c] % v == 0 for s in cols[c]):
            if best is None or len(cols[c]) < len(cols[best]):
                best = c
    return best


def diagonal_invariants(diag) -> list[int]:
    """Invariant factors (ascending, units kept) of a diagonal integer matrix."""
    diag = [abs(d) for d in diag if d]
    if not diag:
        return []
    per_prime: dict[int, list[int]] = {}
    for d in diag:
        for p, e in factorint(d).items():
            per_prime.setdefault(p, []).append(e)
    out = [1] * len(diag)
    for p, exps in per_prime.items():
        exps.sort()
        for k, e in enumerate(exps):
            out[len(diag) - len(exps) + k] *= p**e
    return out


def _torsion_from_divisors(divs) -> tuple[int, ...]:
    return tuple(sorted(d for d in divs if d > 1))


# ------------------------------------------------------------- structure


class _Structure:
    """Explicit presentation of H^n(G, M) = K / I.

    K = {x in C^n : dx in N C^{n+1}} and I = d C^{n-1} + N C^n, where N is the
    relation lattice of M.  For lattices and n >= 1, H^n is the torsion of
    C^n / d C^{n-1}, which needs only one Smith form.
    """

    def __init__(self, G: FiniteGroupTable, M: GLattice, n: int):
        self.G, self.M, self.n = G, M, n
        r = M.rank
        size_n = G.order**n * r
        mods_n = [M.moduli[k % r] for k in range(size_n)] if r else []
        prev = coboundary_rows(G, M, n - 1) if n >= 1 else ()
        size_prev = G.order ** (n - 1) * r if n >= 1 else 0
        extra = [k for k in range(size_n) if mods_n[k]]
        ncols = size_prev + len(extra)
        P = [[0] * ncols for _ in range(size_n)]
        for k, row in enumerate(prev):
            for j, v in row.items():
                P[k][j] = v
        for c, k in enumerate(extra):
            P[k][size_prev + c] = mods_n[k]
        sf = smith_form(P, size_n, ncols)
        diag = sf.diagonal + [0] * (size_n - len(sf.diagonal))
        self.U = sf.U
        self.size_n = size_n
        self.mods_n = mods_n

        def q(i):
            return [sf.U_inv[k][i] for k in range(size_n)]

        if M.is_lattice and n >= 1:
            keep = [i for i in range(size_n) if diag[i] > 1]
            self.keep = keep
            self.factors = tuple(diag[i] for i in keep)
            self.generators = [q(i) for i in keep]
            self.B = None
            return

        keep = [i for i in range(size_n) if diag[i] != 1]
        self.keep = keep
        qs = [q(i) for i in keep]
        nxt = coboundary_rows(G, M, n)
        size_next = G.order ** (n + 1) * r
        mods_next = [M.moduli[k % r] for k in range(size_next)]
        extra_next = [k for k in range(size_next) if mods_next[k]]
        K = [[0] * (len(keep) + len(extra_next)) for _ in range(size_next)]
        for c, qv in enumerate(qs):
            for k, row in enumerate(nxt):
                s = sum(v * qv[j] for j, v in row.items())
                if s:
                    K[k][c] = s
        for c, k in enumerate(extra_next):
            K[k][len(keep) + c] = mods_next[k]
        ksf = smith_form(K, size_next, len(keep) + len(extra_next))
        rank = ksf.rank
        width = len(keep) + len(extra_next)
        B = [[ksf.V[a][col] for col in range(rank, width)] for a in range(len(keep))]
        l = width - rank
        self.B = B
        self.l = l
        rel_cols = []
        for a, i in enumerate(keep):
            if diag[i]:
                target = [0] * len(keep)
                target[a] = diag[i]
                y = self._solve_B(target)
                rel_cols.append(y)
        R = [[col[a] for col in rel_cols] for a in range(l)]
        rsf = smith_form(R, l, len(rel_cols))
        rdiag = rsf.diagonal + [0] * (l - len(rsf.diagonal))
        self.rsf = rsf
        self.rkeep = [j for j in range(l) if rdiag[j] != 1]
        self.factors = tuple(rdiag[j] for j in self.rkeep)
        gens = []
        for j in self.rkeep:
            ycol = [rsf.U_inv[a][j] for a in range(l)]
            coeffs = [sum(B[a][b] * ycol[b] for b in range(l)) for a in range(len(keep))]
            vec = [0] * size_n
            for cf, qv in zip(coeffs, qs):
                if cf:
                    for k in range(size_n):
                        vec[k] += cf * qv[k]
            gens.append(vec)
        self.generators = gens

    def _solve_B(self, target):
        rows = [{b: v for b, v in enumerate(row) if v} for row in self.B]
        y = solve_integer(rows, target, self.l)
        if y is None:
            raise ArithmeticError("internal: vector not in kernel lattice")
        return y

    def coordinates(self, vec) -> tuple[int, ...]:
        u = [sum(a * x for a, x in zip(row, vec) if a) for row in self.U]
        if self.B is None:
            return tuple(u[i] % d for i, d in zip(self.keep, self.factors))
        a = [u[i] for i in self.keep]
        y = self._solve_B(a)
        z = [sum(c * yy for c, yy in zip(row, y)) for row in self.rsf.U]
        return tuple(z[j] % d if d else z[j] for j, d in zip(self.rkeep, self.factors))


@lru_cache(maxsize=128)
def _structure(G, M, n) -> _Structure:
    return _Structure(G, M, n)


@dataclass
class CohomologyClass:
    degree: int
    invariant_factors: tuple[int, ...]
    representative: GroupCochain
    coordinates: tuple[int, ...]

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coordinates)


@dataclass
class CohomologyGroup:
    """H^degree(G, M).  ``invariant_factors`` lists d_1 | d_2 | ...; a 0 stands for a copy of Z."""

    group: FiniteGroupTable
    module: GLattice
    degree: int
    invariant_factors: tuple[int, ...]

    @property
    def order(self) -> Optional[int]:
        if any(d == 0 for d in self.invariant_factors):
            return None
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    @property
    def is_trivial(self) -> bool:
        return not self.invariant_factors

    @cached_property
    def _struct(self) -> _Structure:
        return _structure(self.group, self.module, self.degree)

    @cached_property
    def cocycles(self) -> list[GroupCochain]:
        s = self._struct
        return [vector_to_cochain(self.group, self.module, g, self.degree) for g in s.generators]

    def coordinates(self, f: GroupCochain) -> tuple[int, ...]:
        return self._struct.coordinates(cochain_to_vector(self.group, self.module, f, self.degree))

    def classify(self, f: GroupCochain) -> CohomologyClass:
        fail = first_cocycle_failure(self.group, self.module, f, self.degree)
        if fail is not None:
            raise NotACocycle(f"not a {self.degree}-cocycle: coboundary nonzero at {fail}", fail)
        return CohomologyClass(self.degree, self.invariant_factors, f, self.coordinates(f))


def cohomology_group(G: FiniteGroupTable, M: GLattice, i: int) -> CohomologyGroup:
    """Invariant factors of H^i(G, M), 0 <= i <= 3, with lazily built basis cocycles."""
    _check_degree(i)
    if M.group != G:
        raise ValueError("module is over a different group")
    if M.is_lattice and i >= 1:
        rows = coboundary_rows(G, M, i - 1)
        factors = _torsion_from_divisors(sparse_elementary_divisors(rows, G.order ** (i - 1) * M.rank))
        return CohomologyGroup(G, M, i, factors)
    s = _structure(G, M, i)
    grp = CohomologyGroup(G, M, i, s.factors)
    grp.__dict__["_struct"] = s
    return grp


def cocycle_representatives(G: FiniteGroupTable, M: GLattice, i: int) -> list[GroupCochain]:
    """Cocycles whose classes generate H^i, one per invariant factor."""
    return cohomology_group(G, M, i).cocycles


@dataclass
class WitnessResult:
    is_coboundary: bool
    witness: Optional[GroupCochain] = None
    coordinates: tuple[int, ...] = ()
    invariant_factors: tuple[int, ...] = ()


def coboundary_witness(G: FiniteGroupTable, M: GLattice, c: GroupCochain, i: int) -> WitnessResult:
    """Find w with dw = c, or report the class coordinates of c when none exists."""
    _check_degree(i, low=1)
    fail = first_cocycle_failure(G, M, c, i)
    if fail is not None:
        raise NotACocycle(f"not a {i}-cocycle: coboundary nonzero at {fail}", fail)
    rows = coboundary_rows(G, M, i - 1)
    r = M.rank
    rhs = cochain_to_vector(G, M, c, i)
    mods = [M.moduli[k % r] for k in range(len(rhs))]
    x = solve_integer(rows, rhs, G.order ** (i - 1) * r, mods if not M.is_lattice else None)
    if x is not None:
        return WitnessResult(True, vector_to_cochain(G, M, x, i - 1))
    grp = cohomology_group(G, M, i)
    return WitnessResult(False, None, grp.coordinates(c), grp.invariant_factors)


def inflation_map(
    G: FiniteGroupTable,
    normal_subgroup,
    quotient_cocycle: GroupCochain,
    M: GLattice,
    i: int,
) -> CohomologyClass:
    """Inflate a class of G/N with coefficients in M^N (given as vectors of M) to G.

    ``quotient_cocycle`` is keyed by tuples of indices of ``G.quotient(N)[0]``.
    """
    _check_degree(i)
    Q, proj = G.quotient(normal_subgroup)
    for h in normal_subgroup:
        for v in set(quotient_cocycle.values()):
            if M.act(h, v) != M.reduce(v):
                raise ValueError(f"coefficient {v} is not fixed by subgroup element {h}")
    # action of G/N on M^N through coset representatives
    reps = {}
    for g in G.elements:
        reps.setdefault(proj[g], g)
    MQ = GLattice(Q, tuple(M.action[reps[q]] for q in Q.elements), M.moduli) if _n_acts_trivially(G, normal_subgroup, M) else None
    if MQ is not None:
        fail = first_cocycle_failure(Q, MQ, quotient_cocycle, i)
        if fail is not None:
            raise NotACocycle(f"quotient cochain is not a cocycle at {fail}", fail)
    inflated = {t: M.reduce(quotient_cocycle[tuple(proj[g] for g in t)]) for t in cochain_tuples(G, i)}
    return cohomology_group(G, M, i).classify(inflated)


def _n_acts_trivially(G, N, M) -> bool:
    ident = M.action[G.identity]
    return all(M.action[h] == ident for h in N)
