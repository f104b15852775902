"""Dense matrices over O_K (or K) as tuples of row tuples."""

from __future__ import annotations

from itertools import combinations
from typing import Sequence

from .quadfield import AlgInt, FieldParams

Matrix = tuple[tuple[AlgInt, ...], ...]


def as_matrix(rows) -> Matrix:
    return tuple(tuple(r) for r in rows)


def zeros(field: FieldParams, r: int, c: int | None = None) -> Matrix:
    c = r if c is None else c
    z = field(0, 0)
    return tuple(tuple(z for _ in range(c)) for _ in range(r))


def identity(field: FieldParams, n: int) -> Matrix:
    return tuple(tuple(field(int(i == j), 0) for j in range(n)) for i in range(n))


def scalar(field: FieldParams, n: int, x) -> Matrix:
    z = field(0, 0)
    return tuple(tuple(x if i == j else z for j in range(n)) for i in range(n))


def diag(field: FieldParams, entries: Sequence) -> Matrix:
    n = len(entries)
    z = field(0, 0)
    return tuple(tuple(entries[i] if i == j else z for j in range(n)) for i in range(n))


def block_diag(field: FieldParams, *blocks: Matrix) -> Matrix:
    n = sum(len(b) for b in blocks)
    rows = [list(r) for r in zeros(field, n)]
    off = 0
    for b in blocks:
        k = len(b)
        for i in range(k):
            for j in range(k):
                rows[off + i][off + j] = b[i][j]
        off += k
    return as_matrix(rows)


def blocks(M: Matrix) -> tuple[Matrix, Matrix, Matrix, Matrix]:
    """Split a 2n x 2n matrix into (A, B, C, D)."""
    n = len(M) // 2
    A = tuple(r[:n] for r in M[:n])
    B = tuple(r[n:] for r in M[:n])
    C = tuple(r[:n] for r in M[n:])
    D = tuple(r[n:] for r in M[n:])
    return A, B, C, D


def from_blocks(A: Matrix, B: Matrix, C: Matrix, D: Matrix) -> Matrix:
    top = tuple(a + b for a, b in zip(A, B))
    bot = tuple(c + d for c, d in zip(C, D))
    return top + bot


def mul(X: Matrix, Y: Matrix) -> Matrix:
    if len(X[0]) != len(Y):
        raise ValueError(f"shape mismatch: {len(X)}x{len(X[0])} times {len(Y)}x{len(Y[0])}")
    cols = list(zip(*Y))
    out = []
    for row in X:
        out_row = []
        for col in cols:
            s = row[0] * col[0]
            for x, y in zip(row[1:], col[1:]):
                if x and y:
                    s = s + x * y
            out_row.append(s)
        out.append(tuple(out_row))
    return tuple(out)


def add(X: Matrix, Y: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(X, Y))


def neg(X: Matrix) -> Matrix:
    return tuple(tuple(-x for x in r) for r in X)


def smul(c, X: Matrix) -> Matrix:
    return tuple(tuple(c * x for x in r) for r in X)


def transpose(X: Matrix) -> Matrix:
    return tuple(zip(*X))


def conj(X: Matrix) -> Matrix:
    return tuple(tuple(x.conj() for x in r) for r in X)


def conj_t(X: Matrix) -> Matrix:
    return transpose(conj(X))


def J_matrix(field: FieldParams, n: int) -> Matrix:
    """J = (0 -I; I 0) of size 2n."""
    Z, I = zeros(field, n), identity(field, n)
    return from_blocks(Z, neg(I), I, Z)


def det(X: Matrix):
    """Fraction-free (Bareiss) determinant over O_K; exact divisions only."""
    n = len(X)
    if n == 0:
        raise ValueError("empty matrix")
    F = X[0][0].field
    M = [list(r) for r in X]
    sign = 1
    prev = F(1, 0)
    for k in range(n - 1):
        if not M[k][k]:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return F(0, 0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]).divexact(prev)
        prev = M[k][k]
    return M[n - 1][n - 1] * sign


def minor(X: Matrix, rows: Sequence[int], cols: Sequence[int]):
    return det(tuple(tuple(X[i][j] for j in cols) for i in rows))


def adjugate(X: Matrix) -> Matrix:
    n = len(X)
    F = X[0][0].field
    if n == 1:
        return ((F(1, 0),),)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            rows = [r for r in range(n) if r != j]
            cols = [c for c in range(n) if c != i]
            s = minor(X, rows, cols)
            row.append(s if (i + j) % 2 == 0 else -s)
        out.append(tuple(row))
    return tuple(out)


def all_minors(X: Matrix, k: int):
    n, p = len(X), len(X[0])
    for rows in combinations(range(n), k):
        for cols in combinations(range(p), k):
            yield minor(X, rows, cols)


def entries(X: Matrix):
    for r in X:
        yield from r


def integer_content(X: Matrix) -> int:
    from math import gcd

    g = 0
    for x in entries(X):
        g = gcd(g, gcd(x.a, x.b))
        if g == 1:
            return 1
    return g


def is_zero(X: Matrix) -> bool:
    return not any(entries(X))


def to_json(X: Matrix) -> list:
    return [[x.to_json() for x in r] for r in X]
