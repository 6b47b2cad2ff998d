"""Exact dense linear algebra over Fractions or Gaussian rationals.

Matrices are lists (or tuples) of rows.  Entries must already be field
elements; plain ints are lifted to Fraction so that division stays exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .exact import ONE, ZERO, GaussianRational, Polynomial, gq


def _lift(x):
    return Fraction(x) if isinstance(x, int) else x


def lift_matrix(A):
    return [[_lift(x) for x in row] for row in A]


def identity(n: int, one=ONE):
    zero = one - one
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def zeros(n: int, m: int, zero=ZERO):
    return [[zero] * m for _ in range(n)]


def mat_mul(A, B):
    Bt = list(zip(*B))
    out = []
    for row in A:
        out_row = []
        for col in Bt:
            acc = ZERO
            for a, b in zip(row, col):
                if a and b:
                    acc = acc + a * b
            out_row.append(acc)
        out.append(out_row)
    return out


def mat_vec(A, v):
    out = []
    for row in A:
        acc = ZERO
        for a, b in zip(row, v):
            if a and b:
                acc = acc + a * b
        out.append(acc)
    return out


def dot(u, v):
    acc = ZERO
    for a, b in zip(u, v):
        if a and b:
            acc = acc + a * b
    return acc


def mat_add(A, B):
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_scale(A, c):
    return [[a * c for a in row] for row in A]


def mat_pow(A, n: int):
    result = identity(len(A))
    base = A
    while n:
        if n & 1:
            result = mat_mul(result, base)
        n >>= 1
        if n:
            base = mat_mul(base, base)
    return result


def transpose(A):
    return [list(col) for col in zip(*A)]


def is_zero_matrix(A) -> bool:
    return all(not x for row in A for x in row)


def poly_at_matrix(p: Polynomial, A):
    """Horner evaluation of ``p(A)``."""
    n = len(A)
    result = zeros(n, n)
    for c in reversed(p.coeffs):
        result = mat_mul(result, A)
        for i in range(n):
            result[i][i] = result[i][i] + c
    return result


def poly_at_matrix_vec(p: Polynomial, A, v):
    """``p(A) v`` without forming ``p(A)``."""
    result = [ZERO] * len(v)
    for c in reversed(p.coeffs):
        result = mat_vec(A, result)
        result = [r + c * x for r, x in zip(result, v)]
    return result


def row_reduce(M):
    """Reduced row echelon form.  Returns ``(rref, pivot_columns)``."""
    R = [list(map(_lift, row)) for row in M]
    rows = len(R)
    cols = len(R[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if R[i][c]), None)
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        inv = 1 / R[r][c]
        R[r] = [x * inv for x in R[r]]
        for i in range(rows):
            if i != r and R[i][c]:
                f = R[i][c]
                R[i] = [x - f * y for x, y in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return R, pivots


def rank(M) -> int:
    if not M:
        return 0
    return len(row_reduce(M)[1])


def solve(A, b):
    """Solve ``A x = b`` exactly.

    Returns the solution as a list, or ``None`` when the system is
    inconsistent.  Raises ``ValueError`` when the solution is not unique.
    """
    n = len(A[0]) if A else 0
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, pivots = row_reduce(aug)
    if n in pivots:
        return None
    if len(pivots) < n:
        raise ValueError("solution is not unique (columns are dependent)")
    x = [None] * n
    for i, c in enumerate(pivots):
        x[c] = R[i][n]
    return x


def inverse(A):
    n = len(A)
    one = _lift(1) if not any(isinstance(x, GaussianRational) for row in A for x in row) else ONE
    aug = [list(row) + e for row, e in zip(A, identity(n, one))]
    R, pivots = row_reduce(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in R]


def det(A):
    """Determinant by fraction-tracking Gaussian elimination."""
    M = [list(map(_lift, row)) for row in A]
    n = len(M)
    result = _lift(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c]), None)
        if piv is None:
            return result - result
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            result = -result
        p = M[c][c]
        result = result * p
        inv = 1 / p
        for i in range(c + 1, n):
            if M[i][c]:
                f = M[i][c] * inv
                M[i] = [x - f * y for x, y in zip(M[i], M[c])]
    return result


def nullspace(A) -> list[list]:
    """Basis of ``{x : A x = 0}``."""
    if not A:
        return []
    n = len(A[0])
    R, pivots = row_reduce(A)
    free = [c for c in range(n) if c not in pivots]
    one = ONE if any(isinstance(x, GaussianRational) for row in A for x in row) else Fraction(1)
    zero = one - one
    basis = []
    for f in free:
        v = [zero] * n
        v[f] = one
        for i, c in enumerate(pivots):
            v[c] = -R[i][f]
        basis.append(v)
    return basis


def charpoly(A) -> Polynomial:
    """Characteristic polynomial ``det(t I - A)`` by Faddeev-LeVerrier."""
    n = len(A)
    coeffs = [ZERO] * (n + 1)
    coeffs[n] = ONE
    M = zeros(n, n)
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I ; c_{n-k} = -tr(A M_k) / k
        M = mat_mul(A, M)
        c_prev = coeffs[n - k + 1]
        for i in range(n):
            M[i][i] = M[i][i] + c_prev
        AM = mat_mul(A, M)
        tr = ZERO
        for i in range(n):
            tr = tr + AM[i][i]
        coeffs[n - k] = -tr / k
    return Polynomial(coeffs)


def as_gq_matrix(A: Sequence[Sequence]) -> list[list[GaussianRational]]:
    return [[gq(x) for x in row] for row in A]


def as_gq_vector(v: Sequence) -> list[GaussianRational]:
    return [gq(x) for x in v]
