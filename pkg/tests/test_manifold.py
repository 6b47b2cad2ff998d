import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from donaldson.catalog import k3, pencil_seed
from donaldson.errors import ValidationError, WittenMismatch
from donaldson.exact import ExpSum, QuadExpSeries
from donaldson.geography import stipsicz_profiles
from donaldson.lattice import diagonal_lattice, pairing
from donaldson.manifold import (
    BasicClassEntry,
    EvalRequest,
    Manifold,
    adjunction_check,
    degree_congruence,
    donaldson_series,
    invariant_from_series,
    rotated_extraction,
    simple_type_inference,
    witten_consistency,
    witten_predicted_constant,
)
from donaldson.moves import blowup, tight_surface_cert

from helpers import diag_seed, random_class, random_manifold

HALF = Fraction(1, 2)


def blown_seed():
    return blowup(diag_seed(), "E")


class TestDonaldsonSeries:
    def test_single_trivial_class(self):
        X = diag_seed()
        s = donaldson_series(X, EvalRequest((0, 0, 0), (1, 1, 0)))
        assert s == QuadExpSeries(1, ExpSum({0: 1}))

    def test_pm_E_cosh_form(self):
        X = blown_seed()
        E = X.lattice.basis_vector("E")
        s = donaldson_series(X, EvalRequest(X.lattice.zero(), E))
        assert s == QuadExpSeries(-HALF, ExpSum({1: HALF, -1: HALF}))

    def test_pm_E_sinh_form(self):
        # h = -E puts the K = +E term at exponent +1
        X = blown_seed()
        E = X.lattice.basis_vector("E")
        minus_E = tuple(-x for x in E)
        s = donaldson_series(X, EvalRequest(E, minus_E))
        assert s == QuadExpSeries(-HALF, ExpSum({1: -HALF, -1: HALF}))

    def test_non_simple_type_rejected(self):
        X = diag_seed().with_(simple_type=False)
        with pytest.raises(ValidationError, match="simple type required"):
            donaldson_series(X, EvalRequest((0, 0, 0), (1, 0, 0)))

    def test_even_b_plus_rejected(self):
        L = diagonal_lattice([1, 1])
        X = Manifold("Y", 0, 2, 0, L, basic_classes=(BasicClassEntry((0, 0), 1, 1),))
        with pytest.raises(ValidationError):
            donaldson_series(X, EvalRequest((0, 0), (1, 0)))

    def test_odd_sign_exponent_rejected(self):
        X = diag_seed()
        with pytest.raises(ValidationError, match="odd"):
            donaldson_series(X, EvalRequest((1, 0, 0), (1, 0, 0)))

    def test_empty_class_list_is_zero(self):
        X = diag_seed().with_(basic_classes=())
        assert donaldson_series(X, EvalRequest((0, 0, 0), (1, 0, 0))).is_zero()

    @settings(max_examples=60, suppress_health_check=[HealthCheck.too_slow])
    @given(st.integers(0, 10**6))
    def test_shift_w_by_even_class(self, seed):
        rng = random.Random(seed)
        X = random_manifold(rng, series_ready=True)
        L = X.lattice
        w, h, v = random_class(rng, L), random_class(rng, L), random_class(rng, L)
        w2 = tuple(a + 2 * b for a, b in zip(w, v))
        s1 = donaldson_series(X, EvalRequest(w, h))
        s2 = donaldson_series(X, EvalRequest(w2, h))
        assert s1.gauss == s2.gauss
        if s1.expsum:
            assert s2.expsum in (s1.expsum, -s1.expsum)
        else:
            assert not s2.expsum

    @settings(max_examples=60, suppress_health_check=[HealthCheck.too_slow])
    @given(st.integers(0, 10**6))
    def test_negating_classes_reflects(self, seed):
        rng = random.Random(seed)
        X = random_manifold(rng, series_ready=True)
        neg = tuple(BasicClassEntry(tuple(-x for x in e.klass), e.beta, e.sw) for e in X.basic_classes)
        Xn = X.with_(basic_classes=neg, canonical=None)
        L = X.lattice
        w, h = random_class(rng, L), random_class(rng, L)
        # compare per class, since classes may merge on equal K.h
        for e in X.basic_classes:
            one = X.with_(basic_classes=(e,), canonical=None)
            other = Xn.with_(basic_classes=(neg[X.basic_classes.index(e)],))
            a = donaldson_series(one, EvalRequest(w, h)).expsum
            b = donaldson_series(other, EvalRequest(w, h)).expsum
            assert b.reflect() in (a, -a)


class TestDegreeCongruence:
    def test_examples(self):
        assert degree_congruence(-1, 3, 0, 3) == (True, 3)
        assert degree_congruence(0, 3, 0, 2) == (True, 2)
        assert degree_congruence(0, 3, 0, 3).allowed is False

    def test_half_integer_rejected(self):
        with pytest.raises(ValidationError):
            degree_congruence(0, 2, 0, 0)

    def test_series_respects_parity(self):
        # blowups of K3: odd offsets from d0 vanish, and D(h^n) is zero off d0
        rng = random.Random(3)
        X = blowup(blowup(k3()))
        L = X.lattice
        for _ in range(20):
            w, h = random_class(rng, L, 2), random_class(rng, L, 2)
            s = donaldson_series(X, EvalRequest(w, h))
            cong = degree_congruence(pairing(L, w, w), X.b_plus, X.b1, 0)
            for n in range(12):
                if (n - cong.d0) % 2:
                    assert s.taylor_coefficient(n) == 0
                if not degree_congruence(pairing(L, w, w), X.b_plus, X.b1, n).allowed:
                    assert invariant_from_series(s, n, cong.d0) == 0

    def test_rotated_extraction_agrees(self):
        # isotropic h = 2m^2 u + v + 2m E + a u' with (u, v), (u', v') hyperbolic pairs
        X = blowup(k3())
        L = X.lattice
        iu, iv, iu2, iE = (L.index(x) for x in ("k16", "k17", "k18", "E1"))
        rng = random.Random(5)
        for _ in range(10):
            m, a = rng.randint(-2, 2), rng.randint(-3, 3)
            h = [0] * L.rank
            h[iu], h[iv], h[iE], h[iu2] = 2 * m * m, 1, 2 * m, a
            assert pairing(L, h, h) == 0
            w = random_class(rng, L, 2)
            s = donaldson_series(X, EvalRequest(w, tuple(h)))
            d0 = degree_congruence(pairing(L, w, w), X.b_plus, 0, 0).d0
            for n in range(10):
                assert rotated_extraction(s, n, d0) == invariant_from_series(s, n, d0)


class TestAdjunction:
    L = diagonal_lattice([1, -1])
    S = (1, 1)  # S^2 = 0

    def test_equality(self):
        g = 3
        K = BasicClassEntry((4, 0), 1)
        assert pairing(self.L, K.klass, self.S) == 2 * g - 2
        assert adjunction_check(K, self.S, g, self.L, odd_class=True)

    def test_exceeds(self):
        K = BasicClassEntry((5, 0), 1)
        assert not adjunction_check(K, self.S, 3, self.L, odd_class=True)

    def test_finite_order_absorbs_slack(self):
        K = BasicClassEntry((2, 0), 1, order=1)
        assert adjunction_check(K, self.S, 3, self.L, odd_class=True)

    def test_inapplicable(self):
        K = BasicClassEntry((0, 0), 1)
        with pytest.raises(ValidationError):
            adjunction_check(K, (0, 1), 3, self.L, odd_class=True)
        with pytest.raises(ValidationError):
            adjunction_check(K, self.S, 3, self.L, odd_class=False)

    @given(st.integers(-6, 6), st.integers(-6, 6), st.integers(1, 6))
    def test_order_zero_is_simple_type_inequality(self, a, b, g):
        L = diagonal_lattice([1, 1, -1])
        S = (1, 1, 1)  # S^2 = 1
        K = BasicClassEntry((a, b, 0), 1)
        expected = abs(a + b) + 1 <= 2 * g - 2
        assert adjunction_check(K, S, g, L, odd_class=False) == expected


class TestWitten:
    L = diagonal_lattice([1, 1, 1])

    def test_constant(self):
        K = (1, 1, 1)
        X = Manifold("W", 0, 3, 0, self.L, basic_classes=(
            BasicClassEntry(K, 3, 1), BasicClassEntry((-1, -1, -1), -3, -1)))
        assert witten_consistency(X) == 3

    def test_mismatch(self):
        X = Manifold("W", 0, 3, 0, self.L, basic_classes=(
            BasicClassEntry((1, 1, 1), 3, 1), BasicClassEntry((-1, -1, -1), 2, 1)))
        with pytest.raises(WittenMismatch) as info:
            witten_consistency(X)
        assert info.value.klass == (-1, -1, -1)

    def test_symplectic_model(self):
        seed = pencil_seed()
        K = seed.canonical
        c = Fraction(5, 8)
        X = seed.with_(basic_classes=tuple(BasicClassEntry(e.klass, c * e.sw, e.sw) for e in seed.basic_classes))
        assert {e.sw for e in X.basic_classes if e.klass in (K, tuple(-x for x in K))} == {1, -1}
        assert witten_consistency(X) == c

    @given(st.integers(0, 10**6), st.fractions(min_value=-4, max_value=4, max_denominator=5))
    def test_scaling(self, seed, s):
        if s == 0:
            return
        rng = random.Random(seed)
        X = random_manifold(rng)
        if not X.basic_classes:
            return
        c = witten_consistency(X)
        scaled = X.with_(basic_classes=tuple(BasicClassEntry(e.klass, s * e.beta, e.sw) for e in X.basic_classes))
        assert witten_consistency(scaled) == s * c

    def test_predicted_constant_k3_and_blowup(self):
        X = k3()
        assert witten_predicted_constant(X) == 1 == witten_consistency(X)
        Xt = blowup(X)
        assert witten_predicted_constant(Xt) == HALF == witten_consistency(Xt)


class TestSimpleTypeInference:
    def test_tight_surface(self):
        assert simple_type_inference(k3()).simple_type

    def test_no_certificate(self):
        inf = simple_type_inference(diag_seed())
        assert not inf.simple_type
        assert "not established" in inf.rule

    def test_self_fiber_sum(self):
        _, v2 = stipsicz_profiles(2)
        VV = tight_surface_cert(v2)
        assert (VV.b1, VV.b_plus, VV.b_minus) == (0, 5, 29)
        assert simple_type_inference(VV).simple_type


class TestManifoldValidation:
    def test_signature_mismatch(self):
        with pytest.raises(ValidationError):
            Manifold("bad", 0, 2, 1, diagonal_lattice([1, -1, -1]))

    def test_spin_needs_even_form(self):
        with pytest.raises(ValidationError):
            Manifold("bad", 0, 1, 0, diagonal_lattice([1]), spin=True)

    def test_negation_closure(self):
        L = diagonal_lattice([1])
        with pytest.raises(ValidationError):
            Manifold("bad", 0, 1, 0, L, basic_classes=(BasicClassEntry((1,), 1),), full_data=True)

    def test_zero_beta_rejected(self):
        with pytest.raises(ValidationError):
            BasicClassEntry((0,), 0)

    def test_simple_type_forces_order_zero(self):
        with pytest.raises(ValidationError):
            Manifold("bad", 0, 1, 0, diagonal_lattice([1]), basic_classes=(BasicClassEntry((1,), 1, order=1),))
