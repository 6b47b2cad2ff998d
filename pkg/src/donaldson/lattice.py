"""Unimodular intersection lattices and exact linear algebra on them.

Classes live in H^2/torsion, identified with H_2/torsion through the
unimodular Gram matrix, and are plain integer tuples in the lattice basis.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence

from . import linalg
from .errors import LatticeError

H2Class = tuple  # tuple[int, ...] of coordinates in the lattice basis

E8_NEGATIVE = tuple(
    tuple(
        -2 if i == j else (1 if {i, j} in ({0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {4, 7}) else 0)
        for j in range(8)
    )
    for i in range(8)
)
HYPERBOLIC = ((0, 1), (1, 0))


def congruence_diagonal(gram: Sequence[Sequence[int]]) -> list[Fraction]:
    """Diagonal of a rational congruence diagonalization ``P^T G P``.

    Symmetric elimination; a zero pivot with a nonzero off-diagonal entry
    is repaired by adding the partner row/column, which makes the pivot
    ``2 g_ij``.  Every step is a congruence by a determinant +-1 matrix, so
    the product of the returned diagonal is ``det(G)``.
    """
    A = [[Fraction(x) for x in row] for row in gram]
    n = len(A)
    diag = []
    for k in range(n):
        if A[k][k] == 0:
            j = next((j for j in range(k + 1, n) if A[j][j] != 0), None)
            if j is not None:
                A[k], A[j] = A[j], A[k]
                for row in A:
                    row[k], row[j] = row[j], row[k]
            else:
                j = next((j for j in range(k + 1, n) if A[k][j] != 0), None)
                if j is None:
                    diag.extend([Fraction(0)] * (n - k))
                    return diag
                for c in range(n):
                    A[k][c] += A[j][c]
                for r in range(n):
                    A[r][k] += A[r][j]
        p = A[k][k]
        # Schur complement on the trailing block
        for i in range(k + 1, n):
            f = A[i][k]
            if f:
                f = f / p
                for j in range(k + 1, n):
                    A[i][j] -= f * A[k][j]
        for i in range(k + 1, n):
            A[k][i] = Fraction(0)
            A[i][k] = Fraction(0)
        diag.append(p)
    return diag


@dataclass(frozen=True)
class Lattice:
    """A unimodular symmetric integer form with a labelled basis."""

    gram: tuple[tuple[int, ...], ...]
    basis_labels: tuple[str, ...] = field(default=())

    def __post_init__(self):
        gram = tuple(tuple(int(x) for x in row) for row in self.gram)
        object.__setattr__(self, "gram", gram)
        n = len(gram)
        labels = tuple(self.basis_labels) if self.basis_labels else tuple(f"x{i}" for i in range(n))
        object.__setattr__(self, "basis_labels", labels)
        if any(len(row) != n for row in gram):
            raise LatticeError("gram matrix must be square")
        if len(labels) != n or len(set(labels)) != n:
            raise LatticeError("need one distinct label per basis vector")
        for i in range(n):
            for j in range(i):
                if gram[i][j] != gram[j][i]:
                    raise LatticeError(f"gram matrix not symmetric at ({i}, {j})")
        if abs(self.determinant) != 1:
            raise LatticeError(f"gram matrix is not unimodular (det = {self.determinant})")

    @property
    def rank(self) -> int:
        return len(self.gram)

    @functools.cached_property
    def _diagonal(self) -> list[Fraction]:
        return congruence_diagonal(self.gram)

    @property
    def determinant(self) -> int:
        d = Fraction(1)
        for x in self._diagonal:
            d *= x
        return int(d)

    @property
    def is_even(self) -> bool:
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    def index(self, label: str) -> int:
        try:
            return self.basis_labels.index(label)
        except ValueError:
            raise LatticeError(f"unknown basis label {label!r}") from None

    def basis_vector(self, label: str) -> H2Class:
        v = [0] * self.rank
        v[self.index(label)] = 1
        return tuple(v)

    def zero(self) -> H2Class:
        return (0,) * self.rank

    def pairing(self, a: H2Class, b: H2Class) -> int:
        return pairing(self, a, b)

    def square(self, a: H2Class) -> int:
        return pairing(self, a, a)


def pairing(L: Lattice, a: Sequence[int], b: Sequence[int]) -> int:
    """``a^T G b``."""
    n = L.rank
    if len(a) != n or len(b) != n:
        raise LatticeError(f"class length {len(a)}/{len(b)} does not match lattice rank {n}")
    total = 0
    for i, ai in enumerate(a):
        if ai:
            row = L.gram[i]
            s = 0
            for j, bj in enumerate(b):
                if bj:
                    s += row[j] * bj
            total += ai * s
    return total


def signature(L: Lattice) -> int:
    diag = L._diagonal
    if any(x == 0 for x in diag):
        raise LatticeError("gram matrix is singular")
    return sum(1 for x in diag if x > 0) - sum(1 for x in diag if x < 0)


def inertia(L: Lattice) -> tuple[int, int]:
    """``(#positive, #negative)`` of the diagonalized form."""
    diag = L._diagonal
    return sum(1 for x in diag if x > 0), sum(1 for x in diag if x < 0)


def direct_sum(L1: Lattice, L2: Lattice) -> Lattice:
    n1, n2 = L1.rank, L2.rank
    gram = [list(row) + [0] * n2 for row in L1.gram] + [[0] * n1 + list(row) for row in L2.gram]
    return Lattice(gram, L1.basis_labels + L2.basis_labels)


def diagonal_lattice(entries: Sequence[int], labels: Sequence[str] = ()) -> Lattice:
    n = len(entries)
    return Lattice([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)], tuple(labels))


def standard_lattice(b_plus: int, b_minus: int, even: bool = False, prefix: str = "e") -> Lattice:
    """The unimodular form of the given type.

    Odd: ``b_plus <1> + b_minus <-1>``.  Even: copies of ``E8`` (sign of the
    signature) plus hyperbolic planes; needs ``signature % 8 == 0``.
    """
    if not even:
        return diagonal_lattice([1] * b_plus + [-1] * b_minus, [f"{prefix}{i}" for i in range(b_plus + b_minus)])
    sigma = b_plus - b_minus
    if sigma % 8:
        raise LatticeError("even unimodular forms need signature divisible by 8")
    n_e8 = abs(sigma) // 8
    n_h = min(b_plus, b_minus)
    if (b_plus + b_minus) != 8 * n_e8 + 2 * n_h:
        raise LatticeError("inconsistent even form")
    sign = -1 if sigma < 0 else 1
    blocks = [tuple(tuple(-sign * x for x in row) for row in E8_NEGATIVE)] * n_e8 + [HYPERBOLIC] * n_h
    size = 8 * n_e8 + 2 * n_h
    gram = [[0] * size for _ in range(size)]
    off = 0
    for blk in blocks:
        k = len(blk)
        for i in range(k):
            for j in range(k):
                gram[off + i][off + j] = blk[i][j]
        off += k
    return Lattice(gram, [f"{prefix}{i}" for i in range(size)])


@dataclass(frozen=True)
class SpanSolution:
    coefficients: tuple[Fraction, ...]
    integral: tuple[bool, ...]

    @property
    def all_integral(self) -> bool:
        return all(self.integral)


def solve_in_span(L: Lattice, target: Sequence[int], spanning: Sequence[Sequence[int]]) -> SpanSolution | None:
    """Write ``target`` as a rational combination of ``spanning``.

    Returns ``None`` when target is outside the span.  The spanning classes
    must be linearly independent.
    """
    n = L.rank
    if len(target) != n or any(len(v) != n for v in spanning):
        raise LatticeError("class length does not match lattice rank")
    if not spanning:
        if any(target):
            raise LatticeError("empty spanning set with nonzero target")
        return SpanSolution((), ())
    cols = [[Fraction(x) for x in v] for v in spanning]
    if linalg.rank(cols) < len(cols):
        raise LatticeError("spanning classes are linearly dependent")
    A = [[cols[j][i] for j in range(len(cols))] for i in range(n)]
    x = linalg.solve(A, [Fraction(t) for t in target])
    if x is None:
        return None
    # residual check: recombination reproduces the target exactly
    for i in range(n):
        if sum(A[i][j] * x[j] for j in range(len(x))) != target[i]:
            raise LatticeError("span solution failed residual check")
    return SpanSolution(tuple(x), tuple(c.denominator == 1 for c in x))


def is_primitive(v: Sequence[int]) -> bool:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g == 1


def add(*classes: Sequence[int]) -> H2Class:
    return tuple(sum(xs) for xs in zip(*classes))


def scale(c: int, v: Sequence[int]) -> H2Class:
    return tuple(c * x for x in v)


def sub(a: Sequence[int], b: Sequence[int]) -> H2Class:
    return tuple(x - y for x, y in zip(a, b))


def pad(v: Sequence[int], extra: int) -> H2Class:
    return tuple(v) + (0,) * extra
