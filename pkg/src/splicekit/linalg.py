"""Exact integer and rational linear algebra on lists of lists.

Everything here works with Python ints and ``fractions.Fraction``; no
floating point is ever introduced.  Matrices are plain nested lists and are
never mutated in place by the public functions.
"""

from fractions import Fraction
from itertools import combinations

from .errors import ConsistencyError, DomainError


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A, B):
    cols = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in A]


def matvec(A, x):
    return [sum(a * b for a, b in zip(row, x)) for row in A]


def det(A):
    """Determinant of a square integer matrix by fraction-free Bareiss elimination."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(row) for row in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def cofactor_det(A):
    """Determinant by Laplace expansion along the first row.

    Exponential time; used only as an independent check on small matrices.
    """
    n = len(A)
    if n == 0:
        return 1
    if n == 1:
        return A[0][0]
    total = 0
    for j, a in enumerate(A[0]):
        if a == 0:
            continue
        minor = [row[:j] + row[j + 1:] for row in A[1:]]
        total += (-1) ** j * a * cofactor_det(minor)
    return total


def leading_principal_minors(A):
    return [det([row[:k] for row in A[:k]]) for k in range(1, len(A) + 1)]


def ldl_pivots(A):
    """Pivots of symmetric Gaussian elimination without row exchanges.

    Returns the diagonal of D in A = L D L^T as Fractions, or None when a
    zero pivot appears before the end.
    """
    n = len(A)
    M = [[Fraction(x) for x in row] for row in A]
    pivots = []
    for k in range(n):
        p = M[k][k]
        pivots.append(p)
        if p == 0:
            return None if k < n - 1 else pivots
        for i in range(k + 1, n):
            f = M[i][k] / p
            if f:
                for j in range(k, n):
                    M[i][j] -= f * M[k][j]
    return pivots


def inverse(A):
    """Exact inverse over the rationals; raises DomainError when singular."""
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(A)]
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c] != 0), None)
        if piv is None:
            raise DomainError("matrix is singular")
        M[c], M[piv] = M[piv], M[c]
        p = M[c][c]
        M[c] = [x / p for x in M[c]]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return [row[n:] for row in M]


def maximal_minors(A):
    """All k x k minors of a k x n matrix (k <= n), keyed by column tuple."""
    k = len(A)
    n = len(A[0]) if A else 0
    return {cols: det([[row[c] for c in cols] for row in A])
            for cols in combinations(range(n), k)}


def smith_normal_form(A):
    """Smith normal form with unimodular transforms.

    Returns ``(U, D, V, Uinv)`` with ``U @ A @ V == D``, ``D`` diagonal with
    non-negative entries d_1 | d_2 | ..., and ``Uinv`` the exact inverse of
    ``U``.  The pivot at each stage is the nonzero entry of least absolute
    value in the remaining block, ties broken by row index then column index.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    D = [list(row) for row in A]
    U = identity(m)
    Uinv = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]
        for row in Uinv:
            row[i], row[j] = row[j], row[i]

    def swap_cols(i, j):
        for M in (D, V):
            for row in M:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        D[dst] = [a + q * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]
        for row in Uinv:
            row[src] -= q * row[dst]

    def add_col(dst, src, q):
        for M in (D, V):
            for row in M:
                row[dst] += q * row[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    x = D[i][j]
                    if x and (best is None or abs(x) < abs(D[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                return U, D, V, Uinv
            if best[0] != t:
                swap_rows(t, best[0])
            if best[1] != t:
                swap_cols(t, best[1])
            p = D[t][t]
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // p))
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // p))
            if any(D[i][t] for i in range(t + 1, m)) or any(D[t][j] for j in range(t + 1, n)):
                continue
            bad = next((i for i in range(t + 1, m)
                        if any(D[i][j] % p for j in range(t + 1, n))), None)
            if bad is None:
                break
            add_row(t, bad, 1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
            for row in Uinv:
                row[t] = -row[t]

    if matmul(matmul(U, A), V) != D:
        raise ConsistencyError("Smith normal form transform check failed")
    return U, D, V, Uinv
