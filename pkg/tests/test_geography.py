from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from donaldson.errors import ValidationError
from donaldson.geography import (
    HYPERSURFACE,
    KNOT_SURGERY,
    FibrationProfile,
    combo_threshold,
    elliptic_profile,
    hypersurface_invariants,
    hypersurface_ratio,
    knot_n_coefficient,
    knot_ratio_holds,
    knot_ratio_threshold,
    knot_surgery_profile,
    linear_combo_search,
    ozbagci_obstruction,
    plan_fiber_sum,
    stipsicz_profiles,
)
from donaldson.moves import fiber_sum_numerics


def triple(p):
    return (p.b1, p.b_plus, p.b_minus)


class TestStipsicz:
    def test_even(self):
        v1, v2 = stipsicz_profiles(10)
        assert (triple(v1), triple(v2)) == ((10, 1, 5), (8, 1, 13))
        assert (v1.n_plus, v2.n_plus) == (10, 12)
        assert gcd(v1.n_plus, v2.n_plus) == 2

    def test_odd(self):
        v1, v2 = stipsicz_profiles(9)
        assert (triple(v1), triple(v2)) == ((8, 1, 9), (6, 1, 17))
        assert (v1.n_plus, v2.n_plus) == (10, 12)

    def test_ratio(self):
        v1, _ = stipsicz_profiles(10)
        assert Fraction(v1.n_minus, v1.n_plus) == Fraction(14, 10)

    @given(st.integers(2, 10**4))
    def test_gcd_two(self, g):
        v1, v2 = stipsicz_profiles(g)
        assert gcd(v1.n_plus, v2.n_plus) == 2


class TestOzbagci:
    def test_examples(self):
        assert not ozbagci_obstruction(-2, 2).feasible
        assert ozbagci_obstruction(-4, 6).feasible
        assert ozbagci_obstruction(-4, 2).feasible  # 3 sigma + e = -10

    def test_genus_two_v1_fails(self):
        v1, _ = stipsicz_profiles(2)
        assert not (v1.n_minus < 2 * v1.n_plus)
        assert ozbagci_obstruction(v1.sigma, v1.euler).value <= -6


class TestLinearCombo:
    def test_examples(self):
        assert linear_combo_search(10, 12, 44, 2) == (2, 2)
        assert linear_combo_search(10, 12, 46, 2) is None
        assert linear_combo_search(10, 12, 2, 0) is None

    def test_gcd_must_be_two(self):
        with pytest.raises(ValidationError):
            linear_combo_search(10, 15, 40)

    def test_exhaustive_against_brute_force(self):
        n1, n2, k1min = 10, 12, 2
        for m in range(0, 200, 2):
            brute = [(k1, k2) for k2 in range(n1) for k1 in range(k1min, m // n1 + 1) if k1 * n1 + k2 * n2 == m]
            got = linear_combo_search(n1, n2, m, k1min)
            assert got == (min(brute, key=lambda s: s[1]) if brute else None)

    @pytest.mark.parametrize("n1,n2,k", [(10, 12, 2), (4, 6, 2), (14, 16, 0), (2, 4, 3)])
    def test_threshold(self, n1, n2, k):
        m0 = combo_threshold(n1, n2, k)
        assert m0 == 0 or linear_combo_search(n1, n2, m0 - 2, k) is None
        for m in range(m0, 4 * n1 * n2 + 1, 2):
            assert linear_combo_search(n1, n2, m, k) is not None


class TestHypersurfaces:
    def test_k3(self):
        assert hypersurface_invariants(4) == (24, -16, 3, 19)

    def test_sextic(self):
        assert hypersurface_invariants(6) == (108, -64, 21, 85)

    def test_chern_numbers_oracle(self):
        # c1 = (4 - d) H, c2 = (d^2 - 4d + 6) H^2, H^2 = d; Hirzebruch: sigma = (c1^2 - 2 c2)/3
        for d in range(1, 40):
            c1sq = (4 - d) ** 2 * d
            c2 = (d * d - 4 * d + 6) * d
            e, sigma, bp, bm = hypersurface_invariants(d)
            assert (e, 3 * sigma) == (c2, c1sq - 2 * c2)
            assert bp + bm == e - 2 and bp - bm == sigma

    def test_ratio_decreasing_to_two(self):
        r = [hypersurface_ratio(d) for d in range(6, 41)]
        assert all(x > 2 for x in r)
        assert all(a > b for a, b in zip(r, r[1:]))


class TestKnotSurgery:
    def test_example(self):
        kp = knot_surgery_profile(2, 5)
        assert (kp.c1_sq, kp.chi_h, kp.b_plus) == (48, 16, 31)

    def test_seven_halves(self):
        assert knot_n_coefficient(Fraction(7, 2)) == -1

    @given(st.integers(1, 30), st.integers(1, 30))
    def test_parity(self, g, n):
        kp = knot_surgery_profile(g, n)
        assert (kp.chi_h % 2 == 0) == ((n + g) % 2 == 1)
        assert (kp.b_plus % 4 == 3) == (kp.chi_h % 2 == 0)

    @given(st.integers(1, 20), st.integers(1, 40), st.fractions(min_value=2, max_value=Fraction(11, 3) - Fraction(1, 100)))
    def test_decreasing_in_n(self, g, n, r):
        a = knot_surgery_profile(g, n).ratio_quantity(r)
        b = knot_surgery_profile(g, n + 1).ratio_quantity(r)
        assert b < a

    @given(st.integers(1, 20), st.integers(1, 60))
    def test_ratio_holds_matches_betti(self, g, n):
        kp = knot_surgery_profile(g, n)
        r = Fraction(7, 2)
        assert knot_ratio_holds(g, n, r) == (Fraction(kp.b_minus, kp.b_plus) > r)

    def test_threshold(self):
        r = Fraction(7, 2)
        for g in range(1, 8):
            n0 = knot_ratio_threshold(g, r)
            assert n0 == 1 or not knot_ratio_holds(g, n0 - 1, r)
            assert all(knot_ratio_holds(g, n, r) for n in range(n0, n0 + 200))


class TestElliptic:
    def test_e2_is_k3_numbers(self):
        X = elliptic_profile(2)
        e, sigma, bp, bm = hypersurface_invariants(4)
        assert (X.b_plus, X.b_minus, X.euler, X.signature) == (bp, bm, e, sigma)
        assert X.tight_surface_genus == 2

    def test_e3(self):
        X = elliptic_profile(3)
        assert (X.b_plus, X.b_minus) == (5, 29)

    def test_e1_no_tight_surface(self):
        assert elliptic_profile(1).tight_surface_genus is None


class TestPlanner:
    start10 = FibrationProfile("start", 0, 3, 19, 10)
    start2 = FibrationProfile("start", 0, 3, 19, 2)

    def test_genus_ten_hypersurface(self):
        cert = plan_fiber_sum(self.start10, HYPERSURFACE)
        assert cert.ok and cert.verify()
        res, t = cert.resulting, cert.target
        _, _, bp, bm = hypersurface_invariants(t["degree"])
        assert res.b_plus == bp and res.b_minus < bm
        # recompute the Betti numbers by hand
        b = (0, 3, 19)
        for prof, k in cert.summands:
            for _ in range(k):
                b = fiber_sum_numerics(b, prof, 10).as_triple()
        assert b == (0, res.b_plus, res.b_minus)

    def test_genus_two_hypersurface_fails(self):
        cert = plan_fiber_sum(self.start2, HYPERSURFACE)
        assert not cert.ok
        assert "3 sigma + e <= -6" in cert.failure

    def test_genus_two_knot_surgery(self):
        cert = plan_fiber_sum(self.start2, KNOT_SURGERY)
        assert cert.ok and cert.verify()
        assert cert.target["b_plus"] % 4 == 3

    def test_certificate_tamper_detected(self):
        cert = plan_fiber_sum(self.start10, HYPERSURFACE)
        cert.target = dict(cert.target, b_minus=cert.resulting.b_minus)
        assert not cert.verify()

    def test_unknown_mode(self):
        with pytest.raises(ValidationError):
            plan_fiber_sum(self.start10, "bogus")

    @pytest.mark.parametrize("g", range(2, 21))
    def test_every_genus_knot_mode(self, g):
        cert = plan_fiber_sum(FibrationProfile("s", 0, 3, 19, g), KNOT_SURGERY)
        assert cert.ok and cert.verify()
