"""Independent reference computations used only by the tests."""
from __future__ import annotations

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors


def _column_echelon(T):
    """Unimodular U with T U = [E | 0]; returns (U, rank)."""
    s, r = len(T), len(T[0]) if T else 0
    A = [row[:] for row in T]
    U = [[int(i == j) for j in range(r)] for i in range(r)]

    def colop(j, k, q):  # col_k -= q col_j
        for M in (A, U):
            for row in M:
                row[k] -= q * row[j]

    def swap(j, k):
        for M in (A, U):
            for row in M:
                row[j], row[k] = row[k], row[j]

    piv = 0
    for i in range(s):
        if piv == r:
            break
        while True:
            nz = [k for k in range(piv, r) if A[i][k]]
            if not nz:
                break
            k0 = min(nz, key=lambda k: abs(A[i][k]))
            swap(piv, k0)
            done = True
            for k in range(piv + 1, r):
                if A[i][k]:
                    colop(piv, k, A[i][k] // A[i][piv])
                    done = done and A[i][k] == 0
            if all(A[i][k] == 0 for k in range(piv + 1, r)):
                break
        if any(A[i][k] for k in range(piv, r)):
            piv += 1
    return U, piv


def subquotient_factors(T, S, r):
    """Invariant factors of ker(T) / im(S) for integer matrices with T S = 0 on Z^r.

    Factors equal to 1 are dropped and 0 stands for a copy of Z.
    """
    U, rk = _column_echelon(T) if T else ([[int(i == j) for j in range(r)] for i in range(r)], 0)
    K = Matrix(U)[:, rk:]
    k = K.shape[1]
    if k == 0:
        return ()
    if not S or not S[0]:
        return (0,) * k
    X = Matrix(U).inv() * Matrix(S)
    X = X[rk:, :]
    assert all(x.is_integer for x in X), "image not inside kernel"
    fs = [int(d) for d in invariant_factors(X, domain=ZZ)]
    fs = [abs(d) for d in fs if abs(d) != 1]
    nz = [d for d in fs if d]
    zeros = k - (len(invariant_factors(X, domain=ZZ)) - fs.count(0))
    return tuple(sorted(nz)) + (0,) * zeros


def cyclic_cohomology(A, n, degree):
    """H^degree (degree >= 1) of Z/n acting on Z^r through the matrix A, by periodicity."""
    r = len(A)
    M = Matrix(A)
    I = Matrix.eye(r)
    Nm = Matrix.zeros(r, r)
    P = Matrix.eye(r)
    for _ in range(n):
        Nm += P
        P = M * P
    D = M - I
    tolist = lambda X: [[int(x) for x in X.row(i)] for i in range(X.rows)]
    if degree % 2:
        return subquotient_factors(tolist(Nm), tolist(D), r)
    return subquotient_factors(tolist(D), tolist(Nm), r)
