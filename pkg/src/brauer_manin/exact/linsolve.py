"""Exact solution of sparse integer linear systems, optionally modulo per-row moduli."""
from __future__ import annotations

from typing import Optional, Sequence

from .smith import smith_form

SparseRow = dict[int, int]


def solve_integer(
    rows: Sequence[SparseRow],
    rhs: Sequence[int],
    ncols: int,
    moduli: Optional[Sequence[int]] = None,
) -> Optional[list[int]]:
    """Find integers x with ``sum_j rows[i][j] x_j == rhs[i]`` (mod ``moduli[i]``; 0 = exact).

    Returns one solution, or ``None`` when the system has no integer solution.
    Unit pivots are eliminated first, the remaining block goes through a dense
    Smith form.
    """
    work: list[dict[int, int]] = []
    b: list[int] = []
    total = ncols
    for i, row in enumerate(rows):
        r = {j: v for j, v in row.items() if v}
        m = moduli[i] if moduli is not None else 0
        if m:
            r[total] = m
            total += 1
        work.append(r)
        b.append(int(rhs[i]))

    col_rows: dict[int, set[int]] = {}
    for i, r in enumerate(work):
        for j in r:
            col_rows.setdefault(j, set()).add(i)
    active = set(range(len(work)))
    pivots: list[tuple[int, int, dict[int, int], int]] = []

    while True:
        best = None
        for i in active:
            r = work[i]
            if best is not None and len(r) >= best[0]:
                continue
            for j, v in r.items():
                if v == 1 or v == -1:
                    best = (len(r), i, j)
                    break
        if best is None:
            break
        _, i, j = best
        r = work[i]
        a = r[j]
        for s in list(col_rows.get(j, ())):
            if s == i:
                continue
            rs = work[s]
            f = rs[j] * a
            for k, v in r.items():
                nv = rs.get(k, 0) - f * v
                if nv:
                    if k not in rs:
                        col_rows.setdefault(k, set()).add(s)
                    rs[k] = nv
                elif k in rs:
                    del rs[k]
                    col_rows[k].discard(s)
            b[s] -= f * b[i]
        active.discard(i)
        for k in r:
            col_rows[k].discard(i)
        pivots.append((j, i, r, a))

    x: dict[int, int] = {}
    rest = sorted(active)
    rest_rows = [i for i in rest if work[i]]
    for i in rest:
        if not work[i] and b[i] != 0:
            return None
    if rest_rows:
        cols = sorted({j for i in rest_rows for j in work[i]})
        index = {j: n for n, j in enumerate(cols)}
        dense = [[0] * len(cols) for _ in rest_rows]
        for n, i in enumerate(rest_rows):
            for j, v in work[i].items():
                dense[n][index[j]] = v
        sf = smith_form(dense, len(rest_rows), len(cols))
        c = [sum(u * b[i] for u, i in zip(urow, rest_rows)) for urow in sf.U]
        diag = sf.diagonal
        z = [0] * len(cols)
        for n, cn in enumerate(c):
            d = diag[n] if n < len(diag) else 0
            if d:
                if cn % d:
                    return None
                z[n] = cn // d
            elif cn:
                return None
        for n, j in enumerate(cols):
            x[j] = sum(vr * zz for vr, zz in zip(sf.V[n], z))

    for j, i, r, a in reversed(pivots):
        acc = b[i]
        for k, v in r.items():
            if k != j:
                acc -= v * x.get(k, 0)
        x[j] = a * acc
    return [x.get(j, 0) for j in range(ncols)]


def check_solution(rows, rhs, x, moduli=None) -> bool:
    for i, row in enumerate(rows):
        val = sum(v * x[j] for j, v in row.items()) - rhs[i]
        m = moduli[i] if moduli is not None else 0
        if (val % m if m else val) != 0:
            return False
    return True
