"""Model fibrations and manifolds, and the bounded searches that realize
prescribed ``(b+, b-)`` by fiber sums.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from fractions import Fraction
from math import gcd
from typing import Optional

from .errors import ValidationError
from .manifold import Manifold
from .moves import FiberSumNumerics, fiber_sum_numerics, n_plus_minus

HYPERSURFACE = "ratio_lt_2_hypersurface"
KNOT_SURGERY = "ratio_lt_7_2_knot_surgery"
MODES = (HYPERSURFACE, KNOT_SURGERY)


@dataclass(frozen=True)
class FibrationProfile:
    name: str
    b1: int
    b_plus: int
    b_minus: int
    genus: int
    relatively_minimal: bool = True

    @property
    def n_plus(self) -> int:
        return n_plus_minus(self, self.genus)[0]

    @property
    def n_minus(self) -> int:
        return n_plus_minus(self, self.genus)[1]

    @property
    def sigma(self) -> int:
        return self.b_plus - self.b_minus

    @property
    def euler(self) -> int:
        return 2 - 2 * self.b1 + self.b_plus + self.b_minus


def stipsicz_profiles(g: int) -> tuple[FibrationProfile, FibrationProfile]:
    """Double-cover fibrations: ``(b1, b+, b-)`` is ``(g,1,5), (g-2,1,13)`` for
    even ``g`` and ``(g-1,1,9), (g-3,1,17)`` for odd ``g``."""
    if g < 2:
        raise ValidationError("genus must be at least 2")
    if g % 2 == 0:
        t1, t2 = (g, 1, 5), (g - 2, 1, 13)
    else:
        t1, t2 = (g - 1, 1, 9), (g - 3, 1, 17)
    if t2[0] < 0:
        raise ValidationError(f"no second profile for g = {g}")
    return FibrationProfile(f"V1[g={g}]", *t1, g), FibrationProfile(f"V2[g={g}]", *t2, g)


@dataclass(frozen=True)
class ObstructionVerdict:
    feasible: bool
    value: int  # 3 sigma + e
    reason: str


def ozbagci_obstruction(sigma: int, euler: int) -> ObstructionVerdict:
    """Genus-2 fibrations satisfy ``c1^2 <= 6 chi_h - 3``, i.e. ``3 sigma + e <= -6``."""
    v = 3 * sigma + euler
    if v <= -6:
        return ObstructionVerdict(True, v, "3 sigma + e <= -6")
    return ObstructionVerdict(False, v, f"3 sigma + e = {v} >= -4 is impossible for genus 2")


def linear_combo_search(n1: int, n2: int, m: int, min_k1: int = 0) -> Optional[tuple[int, int]]:
    """``m = k1 n1 + k2 n2`` with ``k2 < n1`` and ``k1 >= min_k1``, smallest ``k2``."""
    if n1 <= 0 or n2 <= 0:
        raise ValidationError("n1, n2 must be positive")
    if gcd(n1, n2) != 2:
        raise ValidationError(f"gcd({n1}, {n2}) must be 2")
    if m % 2:
        return None
    for k2 in range(n1):
        rest = m - k2 * n2
        if rest < 0:
            break
        if rest % n1 == 0 and rest // n1 >= min_k1:
            return rest // n1, k2
    return None


def combo_threshold(n1: int, n2: int, min_k1: int = 0) -> int:
    """Smallest even ``M0`` with every even ``m >= M0`` solvable.

    Scans up to ``n1 n2 + min_k1 n1``; beyond that every even ``m`` is
    solvable since ``(n1/2, n2/2)`` are coprime.
    """
    limit = n1 * n2 + min_k1 * n1
    m0 = 0
    for m in range(0, limit + 1, 2):
        if linear_combo_search(n1, n2, m, min_k1) is None:
            m0 = m + 2
    return m0


def hypersurface_invariants(d: int) -> tuple[int, int, int, int]:
    """``(e, sigma, b+, b-)`` of a smooth degree-``d`` surface in CP^3."""
    if d < 1:
        raise ValidationError("degree must be positive")
    e = d**3 - 4 * d**2 + 6 * d
    num = d * (4 - d * d)
    if num % 3:
        raise ValidationError("signature not integral")
    sigma = num // 3
    return e, sigma, (e + sigma) // 2 - 1, (e - sigma) // 2 - 1


def hypersurface_ratio(d: int) -> Fraction:
    _, _, bp, bm = hypersurface_invariants(d)
    return Fraction(bm, bp)


@dataclass(frozen=True)
class KnotSurgeryProfile:
    g: int
    n: int
    c1_sq: int
    chi_h: int
    b_plus: int
    b_minus: int
    spin: bool = True

    def ratio_quantity(self, r) -> Fraction:
        """``c1^2 + (2r - 10) chi_h``."""
        return self.c1_sq + (2 * Fraction(r) - 10) * self.chi_h


def knot_surgery_profile(g: int, n: int) -> KnotSurgeryProfile:
    """Fibered genus-``g`` knot surgery on ``E(2n)`` followed by the fiber sum."""
    if g < 1 or n < 1:
        raise ValidationError("g and n must be positive")
    c1 = 8 * (g + n - 1)
    chi = 3 * n + g - 1
    sigma = c1 - 8 * chi
    bp = 2 * chi - 1
    return KnotSurgeryProfile(g, n, c1, chi, bp, bp - sigma)


def knot_n_coefficient(r) -> Fraction:
    """Coefficient of ``n`` in ``c1^2 + (2r-10) chi_h = (6r-22) n + (2r-2)(g-1)``."""
    return 6 * Fraction(r) - 22


def knot_ratio_holds(g: int, n: int, r) -> bool:
    """``b-/b+ > r``, via ``c1^2 + (2r-10) chi_h < r - 1``."""
    return knot_surgery_profile(g, n).ratio_quantity(r) < Fraction(r) - 1


def knot_ratio_threshold(g: int, r, n_max: int = 10**6) -> int:
    """Smallest ``n`` from which the ratio condition holds for every larger ``n``.

    The quantity is affine in ``n``, so the first ``n`` that works is the
    threshold once the slope is negative.
    """
    if knot_n_coefficient(r) >= 0:
        raise ValidationError("slope in n is not negative; no threshold")
    for n in range(1, n_max + 1):
        if knot_ratio_holds(g, n, r):
            return n
    raise ValidationError("threshold search exhausted")


def elliptic_profile(n: int) -> Manifold:
    if n < 1:
        raise ValidationError("n must be positive")
    return Manifold(
        name=f"E({n})",
        b1=0,
        b_plus=2 * n - 1,
        b_minus=10 * n - 1,
        spin=n % 2 == 0,
        tight_surface_genus=2 if n >= 2 else None,
    )


# ----------------------------------------------------------------------
# Construction planner
# ----------------------------------------------------------------------


@dataclass
class ConstructionCertificate:
    mode: str
    start: FibrationProfile
    summands: list  # [(FibrationProfile, multiplicity)]
    resulting: Optional[FiberSumNumerics]
    target: dict
    checks: list = field(default_factory=list)  # [(name, passed, values)]
    failure: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.failure is None and bool(self.checks) and all(c[1] for c in self.checks)

    def recompute_checks(self) -> list:
        return _checks(self)

    def verify(self) -> bool:
        return self.recompute_checks() == self.checks

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "start": asdict(self.start),
            "summands": [{"profile": asdict(p), "multiplicity": k} for p, k in self.summands],
            "resulting": None if self.resulting is None else asdict(self.resulting),
            "target": dict(self.target),
            "checks": [{"name": n, "passed": ok, "values": v} for n, ok, v in self.checks],
            "failure": self.failure,
            "ok": self.ok,
        }


def _sum_all(start: FibrationProfile, summands) -> FiberSumNumerics:
    cur = (start.b1, start.b_plus, start.b_minus)
    out = FiberSumNumerics.from_betti(*cur)
    for prof, k in summands:
        for _ in range(k):
            out = fiber_sum_numerics(out.as_triple(), prof, start.genus)
    return out


def _checks(cert: ConstructionCertificate) -> list:
    """Every check recomputed from the certificate's stored fields."""
    (v1, k1), (v2, k2) = cert.summands
    res = _sum_all(cert.start, cert.summands)
    t = cert.target
    m = k1 * v1.n_plus + k2 * v2.n_plus
    checks = [
        ("gcd_n_plus", gcd(v1.n_plus, v2.n_plus) == 2, {"n_plus": [v1.n_plus, v2.n_plus]}),
        ("k1_at_least_2", k1 >= 2, {"k1": k1}),
        ("k2_below_n_plus_v1", k2 < v1.n_plus, {"k2": k2, "n_plus_v1": v1.n_plus}),
        ("numerics_recomputed", res == cert.resulting, {"b_plus": res.b_plus, "b_minus": res.b_minus}),
        ("b_plus_increment", res.b_plus - cert.start.b_plus == m, {"m": m}),
        ("b1_zero", res.b1 == 0, {"b1": res.b1}),
        ("b_plus_equal", res.b_plus == t["b_plus"], {"W": res.b_plus, "target": t["b_plus"]}),
        ("b_minus_strict", res.b_minus < t["b_minus"], {"W": res.b_minus, "target": t["b_minus"]}),
        ("tight_genus_2_surface", k1 >= 2, {"copies_of_v1": k1}),
    ]
    if cert.mode == HYPERSURFACE:
        d = t["degree"]
        _, _, bp, bm = hypersurface_invariants(d)
        checks += [
            ("v1_ratio_lt_2", v1.n_minus < 2 * v1.n_plus, {"n_minus": v1.n_minus, "n_plus": v1.n_plus}),
            ("target_even_degree_ge_6", d % 2 == 0 and d >= 6, {"degree": d}),
            ("target_numbers", (bp, bm) == (t["b_plus"], t["b_minus"]), {"b_plus": bp, "b_minus": bm}),
        ]
    else:
        kp = knot_surgery_profile(t["knot_genus"], t["n"])
        seven_halves = Fraction(7, 2)
        checks += [
            ("v1_ratio_le_3", v1.n_minus <= 3 * v1.n_plus, {"n_minus": v1.n_minus, "n_plus": v1.n_plus}),
            ("target_numbers", (kp.b_plus, kp.b_minus) == (t["b_plus"], t["b_minus"]), {"b_plus": kp.b_plus, "b_minus": kp.b_minus}),
            ("target_ratio_gt_7_2", Fraction(kp.b_minus, kp.b_plus) > seven_halves, {"ratio": str(Fraction(kp.b_minus, kp.b_plus))}),
            ("W_ratio_lt_7_2", Fraction(res.b_minus, res.b_plus) < seven_halves, {"ratio": str(Fraction(res.b_minus, res.b_plus))}),
            ("target_b_plus_3_mod_4", kp.b_plus % 4 == 3, {"b_plus": kp.b_plus}),
            ("n_plus_g_odd", (t["n"] + t["knot_genus"]) % 2 == 1, {"n": t["n"], "g": t["knot_genus"]}),
        ]
    return checks


def _failure(mode, start, reason, checks=()) -> ConstructionCertificate:
    return ConstructionCertificate(mode, start, [], None, {}, list(checks), reason)


def _targets(mode: str, max_steps: int):
    if mode == HYPERSURFACE:
        for d in range(6, 6 + 2 * max_steps, 2):
            _, _, bp, bm = hypersurface_invariants(d)
            yield {"kind": "hypersurface", "degree": d, "b_plus": bp, "b_minus": bm}
    else:
        # b+ grows with n; walk knot genus 1 and the odd-parity n
        for n in range(2, 2 + 2 * max_steps, 2):
            kp = knot_surgery_profile(1, n)
            yield {"kind": "knot_surgery", "knot_genus": 1, "n": n, "b_plus": kp.b_plus, "b_minus": kp.b_minus}


def plan_fiber_sum(start: FibrationProfile, mode: str, max_steps: int = 2000) -> ConstructionCertificate:
    """Pick ``V1, V2``, multiplicities and a target with equal ``b+`` and larger ``b-``."""
    if mode not in MODES:
        raise ValidationError(f"unknown mode {mode!r}")
    g = start.genus
    if g < 2:
        raise ValidationError("start genus must be at least 2")
    if start.b1 != 0:
        raise ValidationError("start must have b1 = 0")
    if start.b_plus % 2 == 0:
        raise ValidationError("start must have odd b+")
    v1, v2 = stipsicz_profiles(g)
    if mode == HYPERSURFACE:
        if v1.n_minus >= 2 * v1.n_plus:
            if g == 2:
                # n-/n+ <= 2 is 3 sigma + e >= 4 - 4g = -4, excluded in genus 2
                obs = ozbagci_obstruction(v1.sigma, v1.euler)
                return _failure(
                    mode,
                    start,
                    "genus-2 fibrations satisfy 3 sigma + e <= -6, so no V1 with n-/n+ <= 2 exists",
                    [("ozbagci_window", False, {"required": ">= -4", "V1_value": obs.value})],
                )
            return _failure(
                mode,
                start,
                f"n-/n+ = {v1.n_minus}/{v1.n_plus} >= 2 for the available V1",
                [("v1_ratio_lt_2", False, {"n_minus": v1.n_minus, "n_plus": v1.n_plus})],
            )
    elif v1.n_minus > 3 * v1.n_plus:
        return _failure(mode, start, "V1 ratio exceeds 3", [("v1_ratio_le_3", False, {})])

    for target in _targets(mode, max_steps):
        m = target["b_plus"] - start.b_plus
        if m < 0:
            continue
        sol = linear_combo_search(v1.n_plus, v2.n_plus, m, min_k1=2)
        if sol is None:
            continue
        k1, k2 = sol
        summands = [(v1, k1), (v2, k2)]
        res = _sum_all(start, summands)
        if res.b_minus >= target["b_minus"]:
            continue
        cert = ConstructionCertificate(mode, start, summands, res, target)
        cert.checks = _checks(cert)
        if cert.ok:
            return cert
    return _failure(mode, start, f"no target found within {max_steps} steps")
