import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from donaldson.errors import LatticeError
from donaldson.lattice import (
    E8_NEGATIVE,
    Lattice,
    diagonal_lattice,
    direct_sum,
    inertia,
    pairing,
    signature,
    solve_in_span,
    standard_lattice,
)

FIBER_SECTION = Lattice([[0, 1], [1, -1]], ["sigma", "e"])


def sympy_signature(gram):
    """Oracle: count signs of the exact eigenvalues."""
    ev = sympy.Matrix(gram).eigenvals()
    pos = sum(m for v, m in ev.items() if sympy.re(v.evalf()) > 0)
    neg = sum(m for v, m in ev.items() if sympy.re(v.evalf()) < 0)
    return pos - neg


class TestPairing:
    def test_fiber_section(self):
        assert pairing(FIBER_SECTION, (1, 0), (0, 1)) == 1

    def test_section_square(self):
        assert pairing(FIBER_SECTION, (0, 1), (0, 1)) == -1

    def test_rank_one(self):
        assert pairing(diagonal_lattice([1]), (3,), (3,)) == 9

    def test_dimension_mismatch(self):
        with pytest.raises(LatticeError):
            pairing(FIBER_SECTION, (1, 0, 0), (0, 1))

    @given(st.lists(st.integers(-5, 5), min_size=4, max_size=4), st.lists(st.integers(-5, 5), min_size=4, max_size=4), st.integers(-3, 3))
    def test_bilinear_symmetric(self, a, b, c):
        L = standard_lattice(2, 2, even=True)
        assert pairing(L, a, b) == pairing(L, b, a)
        ca = [c * x for x in a]
        assert pairing(L, ca, b) == c * pairing(L, a, b)
        ab = [x + y for x, y in zip(a, b)]
        assert pairing(L, ab, b) == pairing(L, a, b) + pairing(L, b, b)


class TestSignature:
    def test_examples(self):
        assert signature(diagonal_lattice([1])) == 1
        assert signature(Lattice([[0, 1], [1, 0]])) == 0
        assert signature(diagonal_lattice([1, -1, -1])) == -1

    def test_e8(self):
        L = Lattice(E8_NEGATIVE)
        assert signature(L) == -8
        assert L.is_even
        assert sympy_signature(E8_NEGATIVE) == -8

    def test_k3_form(self):
        L = standard_lattice(3, 19, even=True)
        assert inertia(L) == (3, 19)
        assert L.determinant in (1, -1)

    def test_non_unimodular_rejected(self):
        with pytest.raises(LatticeError):
            Lattice([[2, 0], [0, 1]])

    def test_non_symmetric_rejected(self):
        with pytest.raises(LatticeError):
            Lattice([[0, 1], [0, 1]])

    def test_random_unimodular_against_sympy(self):
        rng = random.Random(7)
        for _ in range(15):
            n = rng.randint(1, 5)
            D = [[0] * n for _ in range(n)]
            for i in range(n):
                D[i][i] = rng.choice([1, -1])
            # conjugate by a random elementary integer matrix
            S = sympy.eye(n)
            for _ in range(4):
                if n > 1:
                    i, j = rng.sample(range(n), 2)
                    T = sympy.eye(n)
                    T[i, j] = rng.choice([-2, -1, 1, 2])
                    S = S * T
            G = S.T * sympy.Matrix(D) * S
            gram = [[int(G[i, j]) for j in range(n)] for i in range(n)]
            assert signature(Lattice(gram)) == sympy_signature(gram) == sum(D[i][i] for i in range(n))

    @given(st.integers(0, 4), st.integers(0, 4), st.integers(0, 3), st.integers(0, 3))
    def test_direct_sum_additive(self, p1, m1, p2, m2):
        if p1 + m1 == 0 or p2 + m2 == 0:
            return
        L1, L2 = standard_lattice(p1, m1), standard_lattice(p2, m2, prefix="y")
        L = direct_sum(L1, L2)
        assert signature(L) == signature(L1) + signature(L2)
        pos, neg = inertia(L)
        assert pos + neg == L.rank


class TestSolveInSpan:
    L = diagonal_lattice([1, -1, -1, -1], ["h", "s", "f1", "f2"])

    def test_integral(self):
        sol = solve_in_span(self.L, (0, 2, 1, 0), [(0, 1, 0, 0), (0, 0, 1, 0)])
        assert sol.coefficients == (2, 1)
        assert sol.all_integral

    def test_outside_span(self):
        assert solve_in_span(self.L, (1, 0, 0, 0), [(0, 1, 0, 0), (0, 0, 1, 0)]) is None

    def test_half_class(self):
        sol = solve_in_span(self.L, (0, 1, 1, 0), [(0, 2, 2, 0)])
        assert sol.coefficients == (Fraction(1, 2),)
        assert not sol.all_integral

    def test_dependent_spanning(self):
        with pytest.raises(LatticeError):
            solve_in_span(self.L, (0, 1, 0, 0), [(0, 1, 0, 0), (0, 2, 0, 0)])

    def test_empty_spanning_nonzero_target(self):
        with pytest.raises(LatticeError):
            solve_in_span(self.L, (0, 1, 0, 0), [])

    @given(st.lists(st.integers(-4, 4), min_size=3, max_size=3))
    def test_recombination(self, coeffs):
        span = [(1, 1, 0, 0), (0, 1, 2, 0), (0, 0, 1, 1)]
        target = tuple(sum(c * v[i] for c, v in zip(coeffs, span)) for i in range(4))
        sol = solve_in_span(self.L, target, span)
        assert list(sol.coefficients) == coeffs
        back = tuple(sum(c * v[i] for c, v in zip(sol.coefficients, span)) for i in range(4))
        assert back == target


def test_labels_and_basis_vectors():
    L = diagonal_lattice([1, -1], ["H", "E1"])
    assert L.basis_vector("E1") == (0, 1)
    assert L.index("H") == 0
    assert not L.is_even
    with pytest.raises(LatticeError):
        L.index("nope")
