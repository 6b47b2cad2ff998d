"""Lefschetz fibration records and constraints on basic classes ``K``
with ``K.Sigma = 2g - 2``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .errors import MathCheckError, ValidationError
from .lattice import add, is_primitive, pairing, scale, solve_in_span, sub
from .manifold import Manifold
from .moves import blowup


@dataclass(frozen=True)
class LefschetzFibration:
    """A manifold with fiber class, reducible fibers ``F + G = Sigma`` and sections."""

    manifold: Manifold
    fiber: tuple
    genus: int
    reducible_fibers: tuple = ()
    sections: tuple = ()
    relatively_minimal: bool = True
    h1_generated: bool = False

    def __post_init__(self):
        X = self.manifold
        L = X.lattice
        if L is None:
            raise ValidationError(f"{X.name}: fibration needs a lattice")
        S = tuple(int(x) for x in self.fiber)
        object.__setattr__(self, "fiber", S)
        fibers = tuple((tuple(F), tuple(G)) for F, G in self.reducible_fibers)
        object.__setattr__(self, "reducible_fibers", fibers)
        secs = tuple((tuple(E), int(s)) for E, s in self.sections)
        object.__setattr__(self, "sections", secs)
        if self.genus < 2:
            raise ValidationError("fiber genus must be at least 2")
        if pairing(L, S, S) != 0:
            raise ValidationError("fiber class must have square 0")
        if not is_primitive(S):
            raise ValidationError("fiber class must be primitive")
        for F, G in fibers:
            if add(F, G) != S:
                raise ValidationError(f"reducible fiber {F} + {G} != Sigma")
            if pairing(L, F, F) != -1 or pairing(L, G, G) != -1 or pairing(L, F, G) != 1:
                raise ValidationError(f"reducible fiber components need F^2 = G^2 = -1, F.G = 1 ({F})")
            if not is_primitive(F):
                raise ValidationError(f"fiber component {F} is not primitive")
        for E, s in secs:
            if pairing(L, E, S) != 1:
                raise ValidationError(f"section {E} must meet the fiber once")
            if pairing(L, E, E) != s:
                raise ValidationError(f"section {E} has square {pairing(L, E, E)}, declared {s}")
        if X.canonical is not None and pairing(L, X.canonical, S) != 2 * self.genus - 2:
            raise ValidationError("canonical class must satisfy K_X.Sigma = 2g - 2")

    @property
    def lattice(self):
        return self.manifold.lattice

    @property
    def canonical(self):
        if self.manifold.canonical is None:
            raise ValidationError(f"{self.manifold.name}: canonical class missing")
        return self.manifold.canonical

    def minus_one_sections(self) -> list[tuple]:
        return [E for E, s in self.sections if s == -1]


@dataclass(frozen=True)
class DecompositionResult:
    n: Optional[int]
    c: tuple
    valid: bool
    failure_reason: Optional[str] = None  # outside_span | non_integral | negative_n


def _check_top(f: LefschetzFibration, K) -> None:
    if pairing(f.lattice, K, f.fiber) != 2 * f.genus - 2:
        raise ValidationError("K.Sigma must equal 2g - 2")


def decompose_canonical_difference(f: LefschetzFibration, K: Sequence[int]) -> DecompositionResult:
    """Solve ``PD(K_X - K) = n Sigma + sum c_i F_i``."""
    K = tuple(K)
    _check_top(f, K)
    diff = sub(f.canonical, K)
    span = [f.fiber] + [F for F, _ in f.reducible_fibers]
    sol = solve_in_span(f.lattice, diff, span)
    if sol is None:
        return DecompositionResult(None, (), False, "outside_span")
    if not sol.all_integral:
        return DecompositionResult(None, (), False, "non_integral")
    n, *c = (int(x) for x in sol.coefficients)
    if n < 0:
        return DecompositionResult(n, tuple(c), False, "negative_n")
    return DecompositionResult(n, tuple(c), True)


def normalize_and_bound(
    f: LefschetzFibration, dec: DecompositionResult, fiber_genera: Sequence[int]
) -> tuple[int, bool]:
    """``K_X^2 - K^2`` after making every ``c_i >= 0``.

    A negative ``c_i`` is absorbed as ``c_i F_i = c_i Sigma - c_i G_i``,
    swapping ``F_i`` for ``G_i`` (genus ``g - g(F_i)``).  Then
    ``K_X^2 - K^2 = 2n(2g-2) + 2 sum c_i (2g(F_i) - 1) + sum c_i^2``.
    """
    g = f.genus
    if not f.relatively_minimal:
        raise ValidationError("bound needs a relatively minimal fibration")
    if dec.n is None:
        raise ValidationError(f"decomposition failed: {dec.failure_reason}")
    if len(fiber_genera) != len(f.reducible_fibers) or len(dec.c) != len(fiber_genera):
        raise ValidationError("one genus per reducible fiber is required")
    for gf in fiber_genera:
        if gf < 1 or gf > g - 1:
            raise ValidationError("relatively minimal fibers need 1 <= g(F_i) <= g - 1")
    L = f.lattice
    KX = f.manifold.canonical
    n = dec.n
    cs, genera, comps = [], [], []
    for ci, gf, (F, G) in zip(dec.c, fiber_genera, f.reducible_fibers):
        if ci < 0:
            n += ci
            cs.append(-ci)
            genera.append(g - gf)
            comps.append(G)
        else:
            cs.append(ci)
            genera.append(gf)
            comps.append(F)
    if n < 0:
        raise ValidationError(f"normalized fiber coefficient n = {n} is negative")
    if KX is not None:
        for comp, gc in zip(comps, genera):
            if pairing(L, KX, comp) != 2 * gc - 1:
                raise ValidationError(f"K_X.{comp} != 2g(F) - 1 = {2 * gc - 1}")
    value = 2 * n * (2 * g - 2) + sum(2 * c * (2 * gc - 1) + c * c for c, gc in zip(cs, genera))
    if KX is not None:
        K = KX
        K = sub(K, scale(n, f.fiber))
        for c, comp in zip(cs, comps):
            K = sub(K, scale(c, comp))
        direct = pairing(L, KX, KX) - pairing(L, K, K)
        if direct != value:
            raise MathCheckError(f"bound formula gives {value}, lattice gives {direct}")
    if value < 0:
        raise MathCheckError("K_X^2 - K^2 came out negative")
    trivial = n == 0 and not any(cs)
    if (value == 0) != trivial:
        raise MathCheckError("equality case does not match the trivial decomposition")
    return value, trivial


@dataclass(frozen=True)
class Verdict:
    status: str  # holds | fails | equals_canonical | ruled_out | inconclusive
    reason: str = ""
    witness: Optional[tuple] = None

    @property
    def ok(self) -> bool:
        return self.status in ("holds", "equals_canonical")


def sw_max_uniqueness(f: LefschetzFibration) -> Verdict:
    X = f.manifold
    L = f.lattice
    KX = f.canonical
    if X.b_plus <= 1:
        raise ValidationError("needs b+ > 1")
    if not f.relatively_minimal:
        raise ValidationError("needs a relatively minimal fibration")
    classes = X.sw_classes()
    if not classes:
        raise ValidationError("no Seiberg-Witten data")
    kx2 = pairing(L, KX, KX)
    expected = 3 * X.signature + 2 * X.euler
    if kx2 != expected:
        return Verdict("fails", f"K_X^2 = {kx2} != 3 sigma + 2 chi = {expected}", KX)
    if all(e.klass != KX for e in classes):
        return Verdict("fails", "K_X is not among the SW basic classes", KX)
    top = 2 * f.genus - 2
    for e in classes:
        if pairing(L, e.klass, e.klass) != kx2:
            return Verdict("fails", f"K^2 != K_X^2 for {e.klass}", e.klass)
        if e.klass != KX and pairing(L, e.klass, f.fiber) == top:
            return Verdict("fails", f"second class with K.Sigma = 2g-2: {e.klass}", e.klass)
    return Verdict("holds", "K_X is the unique SW class with K.Sigma = 2g-2")


def section_pairing_check(f: LefschetzFibration, K: Sequence[int]) -> bool:
    """``K.E = -1`` for every section of square ``-1``."""
    K = tuple(K)
    _check_top(f, K)
    secs = f.minus_one_sections()
    if not secs:
        raise ValidationError("no sections of square -1")
    return all(pairing(f.lattice, K, E) == -1 for E in secs)


def nonminimal_uniqueness(f: LefschetzFibration, K: Sequence[int]) -> Verdict:
    """Verifier for ``K = K_X`` when every fiber component meets a (-1)-section.

    ``ruled_out`` means the class contradicts an adjunction-type bound that
    any basic class with ``K.Sigma = 2g-2`` must satisfy; ``inconclusive``
    means the hypotheses are not met.
    """
    K = tuple(K)
    _check_top(f, K)
    X = f.manifold
    L = f.lattice
    if X.canonical is None:
        return Verdict("inconclusive", "canonical class missing")
    if not f.relatively_minimal:
        return Verdict("inconclusive", "fibration not relatively minimal")
    if X.b1 != 0 or X.b_plus <= 1:
        return Verdict("inconclusive", "needs b1 = 0 and b+ > 1")
    secs = f.minus_one_sections()
    if not secs:
        return Verdict("inconclusive", "no section of square -1")
    for F, G in f.reducible_fibers:
        for comp in (F, G):
            if not any(pairing(L, E, comp) > 0 for E in secs):
                return Verdict("inconclusive", f"fiber component {comp} meets no (-1)-section", comp)
    KX = X.canonical
    for E in secs:
        if pairing(L, K, E) != -1:
            return Verdict("ruled_out", f"K.E = {pairing(L, K, E)} != -1 for section {E}", E)
    for F, G in f.reducible_fibers:
        for comp in (F, G):
            if pairing(L, K, comp) > pairing(L, KX, comp):
                return Verdict("ruled_out", f"K.{comp} exceeds K_X.{comp}", comp)
    dec = decompose_canonical_difference(f, K)
    if dec.n is None:
        return Verdict("ruled_out", f"K_X - K is not of the form n Sigma + sum c_i F_i ({dec.failure_reason})")
    if any(dec.c):
        # K.F_i = K_X.F_i forces c_i = 0; a nonzero c_i would contradict that
        raise MathCheckError("nonzero c_i survived the component pairing test")
    E = secs[0]
    n = pairing(L, sub(KX, K), E)
    if n != dec.n:
        raise MathCheckError("section pairing disagrees with the decomposition")
    if n != 0:
        return Verdict("ruled_out", f"(K_X - K).E = n = {n} != 0", E)
    return Verdict("equals_canonical", "K = K_X")


@dataclass(frozen=True)
class PencilResult:
    fibration: LefschetzFibration
    genus: int
    base_points: int
    exceptional: tuple = field(default=())


def pencil_genus(omega_sq: int, k_dot_omega: int, k: int) -> int:
    two_g_minus_2 = k * k * omega_sq + k * k_dot_omega
    if two_g_minus_2 % 2:
        raise ValidationError("k^2 w^2 + k K.w must be even")
    return two_g_minus_2 // 2 + 1


def pencil_to_fibration(X: Manifold, omega: Sequence[int], k: int) -> PencilResult:
    """Blow up the ``(k omega)^2`` base points of a degree-``k`` pencil.

    ``2g - 2 = k^2 omega^2 + k K_X.omega``; the new fiber is
    ``k omega - sum E_i`` and the ``E_i`` are sections of square ``-1``.
    """
    L = X.lattice
    if L is None or X.canonical is None:
        raise ValidationError(f"{X.name}: pencil needs a lattice and a canonical class")
    if k < 1:
        raise ValidationError("k must be positive")
    omega = tuple(omega)
    w2 = pairing(L, omega, omega)
    if w2 <= 0:
        raise ValidationError("omega^2 must be positive")
    g = pencil_genus(w2, pairing(L, X.canonical, omega), k)
    if g < 2:
        raise ValidationError(f"pencil fiber genus {g} < 2")
    n = k * k * w2
    Xt = X
    for _ in range(n):
        Xt = blowup(Xt)
    r0 = L.rank
    Es = tuple(tuple(1 if j == r0 + i else 0 for j in range(r0 + n)) for i in range(n))
    fiber = tuple(k * x for x in omega) + (0,) * n
    for E in Es:
        fiber = sub(fiber, E)
    fib = LefschetzFibration(
        manifold=Xt,
        fiber=fiber,
        genus=g,
        sections=tuple((E, -1) for E in Es),
        relatively_minimal=True,
    )
    Lt = Xt.lattice
    if pairing(Lt, fiber, fiber) != 0 or pairing(Lt, Xt.canonical, fiber) != 2 * g - 2:
        raise MathCheckError("blown-up pencil violates Sigma^2 = 0 or K.Sigma = 2g-2")
    if Xt.b_minus - X.b_minus != n:
        raise MathCheckError("b- did not increase by the number of base points")
    return PencilResult(fib, g, n, Es)
