"""Smith normal form over Z, with transforms."""
from __future__ import annotations

from dataclasses import dataclass

Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    out = []
    for row in a:
        out_row = [0] * cols
        for k in range(inner):
            x = row[k]
            if x:
                bk = b[k]
                for j in range(cols):
                    if bk[j]:
                        out_row[j] += x * bk[j]
        out.append(out_row)
    return out


def matvec(a: Matrix, v: list[int]) -> list[int]:
    return [sum(x * y for x, y in zip(row, v) if x) for row in a]


def determinant(m: Matrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(m)
    if n == 0:
        return 1
    a = [row[:] for row in m]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


@dataclass
class SmithForm:
    """``U @ M @ V == D`` with ``U_inv`` the inverse of ``U``."""

    U: Matrix
    D: Matrix
    V: Matrix
    U_inv: Matrix

    @property
    def diagonal(self) -> list[int]:
        n = min(len(self.D), len(self.D[0]) if self.D else 0)
        return [self.D[i][i] for i in range(n)]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


def smith_form(m: Matrix, rows: int | None = None, cols: int | None = None) -> SmithForm:
    """Smith normal form of an integer matrix.

    Diagonal entries are nonnegative and each divides the next.
    """
    nr = len(m) if rows is None else rows
    nc = (len(m[0]) if m else 0) if cols is None else cols
    D = [list(map(int, row)) for row in m]
    U, Ui, V = identity(nr), identity(nr), identity(nc)

    def row_swap(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]
        for r in Ui:
            r[i], r[j] = r[j], r[i]

    def col_swap(i, j):
        for r in D:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def row_combine(i, j, a, b, c, d):
        # rows (i, j) <- (a*Ri + b*Rj, c*Ri + d*Rj); ad - bc = +-1
        Di, Dj = D[i], D[j]
        D[i] = [a * x + b * y for x, y in zip(Di, Dj)]
        D[j] = [c * x + d * y for x, y in zip(Di, Dj)]
        Ui_, Uj_ = U[i], U[j]
        U[i] = [a * x + b * y for x, y in zip(Ui_, Uj_)]
        U[j] = [c * x + d * y for x, y in zip(Ui_, Uj_)]
        det = a * d - b * c
        # inverse of [[a, b], [c, d]] is det * [[d, -b], [-c, a]]; applied on columns of Ui
        for r in Ui:
            x, y = r[i], r[j]
            r[i] = det * (x * d - y * c)
            r[j] = det * (-x * b + y * a)

    def col_combine(i, j, a, b, c, d):
        # cols (i, j) <- (a*Ci + b*Cj, c*Ci + d*Cj)
        for r in D:
            x, y = r[i], r[j]
            r[i] = a * x + b * y
            r[j] = c * x + d * y
        for r in V:
            x, y = r[i], r[j]
            r[i] = a * x + b * y
            r[j] = c * x + d * y

    def xgcd(a, b):
        x0, x1, y0, y1 = 1, 0, 0, 1
        while b:
            q = a // b
            a, b = b, a - q * b
            x0, x1 = x1, x0 - q * x1
            y0, y1 = y1, y0 - q * y1
        if a < 0:
            a, x0, y0 = -a, -x0, -y0
        return a, x0, y0

    t = 0
    while t < min(nr, nc):
        # pivot: smallest nonzero magnitude in the remaining block
        best = None
        for i in range(t, nr):
            row = D[i]
            for j in range(t, nc):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, pi, pj = best
        if pi != t:
            row_swap(t, pi)
        if pj != t:
            col_swap(t, pj)
        while True:
            done = True
            for i in range(t + 1, nr):
                b = D[i][t]
                if b:
                    a = D[t][t]
                    if b % a == 0:
                        q = b // a
                        row_combine(t, i, 1, 0, -q, 1)
                    else:
                        g, x, y = xgcd(a, b)
                        row_combine(t, i, x, y, -b // g, a // g)
                        done = False
            for j in range(t + 1, nc):
                b = D[t][j]
                if b:
                    a = D[t][t]
                    if b % a == 0:
                        q = b // a
                        col_combine(t, j, 1, 0, -q, 1)
                    else:
                        g, x, y = xgcd(a, b)
                        col_combine(t, j, x, y, -b // g, a // g)
                        done = False
            if done and all(D[i][t] == 0 for i in range(t + 1, nr)):
                break
        # divisibility: if some remaining entry is not divisible by the pivot, fold its row in
        a = D[t][t]
        bad = None
        for i in range(t + 1, nr):
            for j in range(t + 1, nc):
                if D[i][j] % a:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            row_combine(t, bad, 1, 1, 0, 1)
            continue
        if a < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
            for r in Ui:
                r[t] = -r[t]
        t += 1
    return SmithForm(U, D, V, Ui)


def smith_normal_form(m: Matrix) -> tuple[Matrix, Matrix, Matrix]:
    """Return ``(U, D, V)`` with ``U M V = D`` in Smith normal form."""
    sf = smith_form(m)
    return sf.U, sf.D, sf.V


def invariant_factors(m: Matrix) -> list[int]:
    """Nonzero diagonal entries of the Smith form (including units)."""
    return [d for d in smith_form(m).diagonal if d]
