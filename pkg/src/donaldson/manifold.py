"""4-manifold records with their simple-type Donaldson series, plus the
consistency rules that constrain basic classes.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import NamedTuple, Optional, Sequence

from .errors import ValidationError, WittenMismatch
from .exact import ZERO, ExpSum, GaussianRational, QuadExpSeries, gq, i_power
from .lattice import Lattice, pairing, signature


@dataclass(frozen=True)
class BasicClassEntry:
    """One basic class with whatever invariants are known for it.

    ``beta`` is the Donaldson coefficient, ``sw`` the Seiberg-Witten value,
    ``order`` the finite-type order d(K).  Either invariant may be absent.
    """

    klass: tuple
    beta: Optional[Fraction] = None
    sw: Optional[int] = None
    order: int = 0

    def __post_init__(self):
        object.__setattr__(self, "klass", tuple(int(x) for x in self.klass))
        if self.beta is not None:
            object.__setattr__(self, "beta", Fraction(self.beta))
            if self.beta == 0:
                raise ValidationError("Donaldson coefficient beta must be nonzero when present")
        if self.sw is not None:
            object.__setattr__(self, "sw", int(self.sw))
        if self.order < 0:
            raise ValidationError("finite-type order must be nonnegative")


@dataclass(frozen=True)
class Manifold:
    """Betti numbers and basic-class data of a closed 4-manifold.

    ``lattice`` may be ``None`` for skeleton records that only carry Betti
    numbers (catalog entries such as hypersurfaces).  ``full_data`` declares
    that ``basic_classes`` is the complete Donaldson list, which makes the
    closure under ``K -> -K`` checkable.
    """

    name: str
    b1: int
    b_plus: int
    b_minus: int
    lattice: Optional[Lattice] = None
    canonical: Optional[tuple] = None
    basic_classes: tuple[BasicClassEntry, ...] = ()
    simple_type: bool = True
    finite_type_order: int = 0
    spin: bool = False
    tight_surface_genus: Optional[int] = None
    orientation_sign: int = 1
    full_data: bool = False

    def __post_init__(self):
        object.__setattr__(self, "basic_classes", tuple(self.basic_classes))
        if self.canonical is not None:
            object.__setattr__(self, "canonical", tuple(int(x) for x in self.canonical))
        for name in ("b1", "b_plus", "b_minus", "finite_type_order"):
            if getattr(self, name) < 0:
                raise ValidationError(f"{self.name}: {name} must be nonnegative")
        if self.orientation_sign not in (1, -1):
            raise ValidationError(f"{self.name}: orientation_sign must be +1 or -1")
        if self.simple_type and any(e.order for e in self.basic_classes):
            raise ValidationError(f"{self.name}: simple type forces order 0 on every basic class")
        if self.tight_surface_genus is not None and self.tight_surface_genus < 2:
            raise ValidationError(f"{self.name}: a tight surface has genus >= 2 (S^2 = 2g-2 > 0)")
        L = self.lattice
        if L is None:
            if self.canonical is not None or self.basic_classes:
                raise ValidationError(f"{self.name}: classes need a lattice")
            return
        if L.rank != self.b_plus + self.b_minus:
            raise ValidationError(f"{self.name}: lattice rank {L.rank} != b+ + b- = {self.b_plus + self.b_minus}")
        if signature(L) != self.b_plus - self.b_minus:
            raise ValidationError(f"{self.name}: lattice signature {signature(L)} != b+ - b-")
        if self.spin and not L.is_even:
            raise ValidationError(f"{self.name}: spin manifolds have even intersection form")
        if self.canonical is not None and len(self.canonical) != L.rank:
            raise ValidationError(f"{self.name}: canonical class has wrong length")
        for e in self.basic_classes:
            if len(e.klass) != L.rank:
                raise ValidationError(f"{self.name}: basic class {e.klass} has wrong length")
        if len({e.klass for e in self.basic_classes}) != len(self.basic_classes):
            raise ValidationError(f"{self.name}: repeated basic class")
        if self.full_data:
            ks = {e.klass for e in self.basic_classes}
            for k in ks:
                if tuple(-x for x in k) not in ks:
                    raise ValidationError(f"{self.name}: basic classes not closed under negation ({k})")

    @property
    def signature(self) -> int:
        return self.b_plus - self.b_minus

    @property
    def euler(self) -> int:
        return 2 - 2 * self.b1 + self.b_plus + self.b_minus

    def entry(self, klass) -> Optional[BasicClassEntry]:
        klass = tuple(klass)
        for e in self.basic_classes:
            if e.klass == klass:
                return e
        return None

    def sw_classes(self) -> list[BasicClassEntry]:
        return [e for e in self.basic_classes if e.sw]

    def donaldson_classes(self) -> list[BasicClassEntry]:
        return [e for e in self.basic_classes if e.beta is not None]

    def with_(self, **changes) -> Manifold:
        return replace(self, **changes)


@dataclass(frozen=True)
class EvalRequest:
    w: tuple
    h: tuple


def _sign_exponent(L: Lattice, w, k) -> int:
    s = pairing(L, w, w) + pairing(L, k, w)
    if s % 2:
        raise ValidationError(f"w^2 + K.w is odd for K = {k}; the sign (-1)^((w^2+K.w)/2) is undefined")
    return s // 2


def donaldson_series(X: Manifold, req: EvalRequest) -> QuadExpSeries:
    """``exp(Q(h)/2) * sum_r (-1)^((w^2 + K_r.w)/2) beta_r exp(K_r.h)``.

    The result is multiplied by the manifold's orientation sign.
    """
    if not X.simple_type:
        raise ValidationError(f"{X.name}: simple type required; use asymptotics for finite-type data")
    if X.b1 != 0:
        raise ValidationError(f"{X.name}: structure formula needs b1 = 0")
    if X.b_plus < 2 or X.b_plus % 2 == 0:
        raise ValidationError(f"{X.name}: structure formula needs b+ > 1 odd")
    L = X.lattice
    if L is None:
        raise ValidationError(f"{X.name}: no lattice")
    w, h = tuple(req.w), tuple(req.h)
    terms = []
    for e in X.basic_classes:
        if e.beta is None:
            raise ValidationError(f"{X.name}: basic class {e.klass} carries no Donaldson coefficient")
        sign = -1 if _sign_exponent(L, w, e.klass) % 2 else 1
        terms.append((pairing(L, e.klass, h), sign * X.orientation_sign * e.beta))
    return QuadExpSeries(Fraction(pairing(L, h, h), 2), ExpSum(terms))


class Congruence(NamedTuple):
    allowed: bool
    d0: int


def degree_congruence(w_sq: int, b_plus: int, b1: int, n: int) -> Congruence:
    """Whether ``D(h^n)`` may be nonzero: ``n = -w^2 - 3(b+ - b1 + 1)/2 (mod 4)``."""
    t = b_plus - b1 + 1
    if t % 2:
        raise ValidationError("b+ - b1 + 1 must be even for the degree congruence")
    d0 = (-w_sq - 3 * (t // 2)) % 4
    return Congruence(n % 4 == d0, d0)


def d0_residue(w_sq: int, b_plus: int, b1: int = 0) -> int:
    return degree_congruence(w_sq, b_plus, b1, 0).d0


def invariant_from_series(s: QuadExpSeries, n: int, d0: int) -> GaussianRational:
    """``D(h^n)`` read off the series.

    The series packs ``D(h^n)`` in degrees ``n = d0 (mod 4)`` and
    ``D(x h^n)/2`` in degrees ``n = d0 + 2``, so only the first class is
    returned; everything else is zero by the degree congruence.
    """
    if n % 4 != d0 % 4:
        return ZERO
    return s.taylor_coefficient(n)


def rotated_extraction(s: QuadExpSeries, n: int, d0: int) -> GaussianRational:
    """``D(h^n)`` via ``1/2 [sum a lam^n + (-i)^d0 sum a (i lam)^n]``.

    Valid when ``Q(h) = 0``; an independent route to
    :func:`invariant_from_series`.
    """
    if s.gauss != 0:
        raise ValidationError("rotated extraction needs Q(h) = 0")
    a = ZERO
    b = ZERO
    for lam, c in s.terms():
        a = a + c * lam**n
        b = b + c * (i_power(1) * lam) ** n
    return (a + i_power(-d0) * b) / 2


def adjunction_check(
    K: BasicClassEntry, S: Sequence[int], genus: int, L: Lattice, odd_class: bool
) -> bool:
    """``|K.S| + S.S + 2 d(K) <= 2g - 2`` for surfaces where it applies."""
    if genus < 1:
        raise ValidationError("adjunction inequality needs genus >= 1")
    s2 = pairing(L, S, S)
    if s2 < 0 or (s2 == 0 and not odd_class):
        raise ValidationError("adjunction inequality applies only when S^2 > 0, or S^2 = 0 with S odd")
    return abs(pairing(L, K.klass, S)) + s2 + 2 * K.order <= 2 * genus - 2


def witten_consistency(X: Manifold) -> Fraction:
    """The unique ``c`` with ``beta_r = c * SW(K_r)`` for every class.

    Raises :class:`WittenMismatch` naming the first class that disagrees.
    """
    if not X.basic_classes:
        raise ValidationError(f"{X.name}: no basic classes")
    c = None
    for e in X.basic_classes:
        if e.beta is None or e.sw is None:
            raise ValidationError(f"{X.name}: class {e.klass} lacks beta or SW")
        if e.sw == 0:
            raise WittenMismatch(f"{X.name}: class {e.klass} has SW = 0 but beta = {e.beta}", e.klass)
        ratio = e.beta / e.sw
        if c is None:
            c = ratio
        elif ratio != c:
            raise WittenMismatch(f"{X.name}: beta/SW = {ratio} at {e.klass}, expected {c}", e.klass)
    return c


def witten_predicted_constant(X: Manifold) -> Fraction:
    """Witten's predicted ``c(X) = 2^(2 + (7e + 11 sigma)/4)``; never assumed."""
    num = 7 * X.euler + 11 * X.signature
    if num % 4:
        raise ValidationError(f"{X.name}: (7e + 11 sigma)/4 is not an integer")
    return Fraction(2) ** (2 + num // 4)


class Inference(NamedTuple):
    simple_type: bool
    rule: str


def simple_type_inference(X: Manifold) -> Inference:
    if X.b1 != 0 or X.b_plus < 2 or X.b_plus % 2 == 0:
        raise ValidationError(f"{X.name}: inference needs b1 = 0 and b+ > 1 odd")
    if X.tight_surface_genus is not None:
        return Inference(True, f"tight surface of genus {X.tight_surface_genus} (S^2 = 2g-2 > 0)")
    return Inference(False, "no tight surface recorded; simple type not established")


def leading_term(s: QuadExpSeries):
    """Term of maximal real exponent, or ``None`` for the zero series."""
    return s.leading()


__all__ = [
    "BasicClassEntry",
    "Manifold",
    "EvalRequest",
    "donaldson_series",
    "degree_congruence",
    "d0_residue",
    "invariant_from_series",
    "rotated_extraction",
    "adjunction_check",
    "witten_consistency",
    "witten_predicted_constant",
    "simple_type_inference",
    "leading_term",
    "gq",
]
