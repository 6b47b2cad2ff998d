"""Invariant-level surgeries on manifold records and fibration data."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import BlowdownError, MathCheckError, ValidationError
from .exact import ExpSum, QuadExpSeries
from .lattice import Lattice, diagonal_lattice, direct_sum, pairing
from .manifold import BasicClassEntry, Manifold

BLOWUP_SUFFIX = "#-CP2"


def _fresh_label(L: Lattice, stem: str = "E") -> str:
    used = set(L.basis_labels)
    i = 1
    while f"{stem}{i}" in used:
        i += 1
    return f"{stem}{i}"


def blowup(X: Manifold, label: Optional[str] = None) -> Manifold:
    """Blow up once: add a ``<-1>`` summand spanned by a new class ``E``.

    Donaldson classes ``K`` become ``K +- E`` with half the coefficient
    (the cosh factor), SW classes become ``K +- E`` with the same value.
    """
    L = X.lattice
    if L is None:
        raise ValidationError(f"{X.name}: blowup needs an intersection lattice")
    label = label or _fresh_label(L)
    if label in L.basis_labels:
        raise ValidationError(f"label {label!r} already used")
    Lt = direct_sum(L, diagonal_lattice([-1], [label]))

    merged: dict[tuple, list] = {}
    for e in X.basic_classes:
        for s in (1, -1):
            k = e.klass + (s,)
            beta = None if e.beta is None else e.beta / 2
            merged[k] = [beta, e.sw, e.order]
    classes = [BasicClassEntry(k, beta, sw, order) for k, (beta, sw, order) in merged.items()]
    canonical = None if X.canonical is None else X.canonical + (1,)
    return Manifold(
        name=X.name + BLOWUP_SUFFIX,
        b1=X.b1,
        b_plus=X.b_plus,
        b_minus=X.b_minus + 1,
        lattice=Lt,
        canonical=canonical,
        basic_classes=tuple(classes),
        simple_type=X.simple_type,
        finite_type_order=X.finite_type_order,
        spin=False,
        tight_surface_genus=X.tight_surface_genus,
        orientation_sign=X.orientation_sign,
        full_data=X.full_data,
    )


def _summand_index(L: Lattice, E: Sequence[int]) -> int:
    E = tuple(E)
    if pairing(L, E, E) != -1:
        raise BlowdownError(f"E^2 = {pairing(L, E, E)}, expected -1", E)
    nz = [i for i, x in enumerate(E) if x]
    if len(nz) != 1 or E[nz[0]] != 1:
        raise BlowdownError("E must be a basis vector of the lattice", E)
    i = nz[0]
    if any(L.gram[i][j] for j in range(L.rank) if j != i):
        raise BlowdownError("E must span an orthogonal <-1> summand", E)
    return i


def blowdown(Xt: Manifold, E: Sequence[int]) -> Manifold:
    """Inverse of :func:`blowup` along the exceptional class ``E``.

    Classes must pair off as ``{K + E, K - E}`` with equal coefficients;
    otherwise :class:`BlowdownError` carries an offending class.
    """
    L = Xt.lattice
    if L is None:
        raise ValidationError(f"{Xt.name}: no lattice")
    i = _summand_index(L, E)

    def drop(v):
        return v[:i] + v[i + 1 :]

    by_class = {e.klass: e for e in Xt.basic_classes}
    classes = []
    for e in Xt.basic_classes:
        c = e.klass[i]
        if c not in (1, -1):
            raise BlowdownError(f"class {e.klass} has E-coefficient {c}, not +-1", e.klass)
        partner = by_class.get(e.klass[:i] + (-c,) + e.klass[i + 1 :])
        if partner is None:
            raise BlowdownError(f"class {e.klass} has no partner K -+ E", e.klass)
        if (partner.beta, partner.sw, partner.order) != (e.beta, e.sw, e.order):
            raise BlowdownError(f"classes {e.klass} and {partner.klass} carry different data", e.klass)
        if c == 1:
            beta = None if e.beta is None else 2 * e.beta
            classes.append(BasicClassEntry(drop(e.klass), beta, e.sw, e.order))

    canonical = None
    if Xt.canonical is not None:
        if Xt.canonical[i] != 1:
            raise BlowdownError("canonical class must have E-coefficient 1", Xt.canonical)
        canonical = drop(Xt.canonical)
    gram = [drop(row) for row in drop(L.gram)]
    L0 = Lattice(gram, drop(L.basis_labels))
    name = Xt.name[: -len(BLOWUP_SUFFIX)] if Xt.name.endswith(BLOWUP_SUFFIX) else Xt.name + "(blown down)"
    return Manifold(
        name=name,
        b1=Xt.b1,
        b_plus=Xt.b_plus,
        b_minus=Xt.b_minus - 1,
        lattice=L0,
        canonical=canonical,
        basic_classes=tuple(classes),
        simple_type=Xt.simple_type,
        finite_type_order=Xt.finite_type_order,
        # even form after removing E; spin only tracked for b1 = 0
        spin=L0.is_even and Xt.b1 == 0,
        tight_surface_genus=Xt.tight_surface_genus,
        orientation_sign=Xt.orientation_sign,
        full_data=Xt.full_data,
    )


# ----------------------------------------------------------------------
# Fiber sums
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class FiberSumNumerics:
    b1: int
    b_plus: int
    b_minus: int
    sigma: int
    euler: int

    def __post_init__(self):
        if self.euler != 2 - 2 * self.b1 + self.b_plus + self.b_minus:
            raise MathCheckError("euler != 2 - 2 b1 + b+ + b-")
        if self.sigma != self.b_plus - self.b_minus:
            raise MathCheckError("sigma != b+ - b-")

    @classmethod
    def from_betti(cls, b1: int, b_plus: int, b_minus: int) -> FiberSumNumerics:
        return cls(b1, b_plus, b_minus, b_plus - b_minus, 2 - 2 * b1 + b_plus + b_minus)

    def as_triple(self) -> tuple[int, int, int]:
        return (self.b1, self.b_plus, self.b_minus)


def _betti(x) -> tuple[int, int, int]:
    if isinstance(x, (tuple, list)):
        b1, bp, bm = x
        return int(b1), int(bp), int(bm)
    return x.b1, x.b_plus, x.b_minus


def n_plus_minus(V, g: int) -> tuple[int, int]:
    """``n+-(V) = b+-(V) - b1(V) + 2g - 1``."""
    b1, bp, bm = _betti(V)
    return bp - b1 + 2 * g - 1, bm - b1 + 2 * g - 1


def fiber_sum_numerics(W, V, g: int) -> FiberSumNumerics:
    """Betti numbers of ``W #_Sigma V`` when ``b1(W) = 0``.

    The result is checked against the signature and Euler characteristic
    additivity of fiber sums.
    """
    if g < 2:
        raise ValidationError("fiber genus must be at least 2")
    b1w, bpw, bmw = _betti(W)
    b1v, bpv, bmv = _betti(V)
    if b1w != 0:
        raise ValidationError("fiber-sum bookkeeping is tracked only for b1(W) = 0")
    npl, nmi = n_plus_minus((b1v, bpv, bmv), g)
    out = FiberSumNumerics.from_betti(0, bpw + npl, bmw + nmi)
    sw, ew = bpw - bmw, 2 + bpw + bmw
    sv, ev = bpv - bmv, 2 - 2 * b1v + bpv + bmv
    if out.sigma != sw + sv or out.euler != ew + ev - 2 * (2 - 2 * g):
        raise MathCheckError("fiber sum violates signature/Euler additivity")
    return out


def tight_surface_cert(V, b1: Optional[int] = None) -> Manifold:
    """Record for ``V #_Sigma V`` carrying a tight genus-2 surface.

    ``V`` is any fibration profile (``name, b1, b_plus, b_minus, genus``).
    A fibration is nontrivial iff it has a singular fiber, i.e.
    ``e(V) > 4 - 4g``.  ``b1`` of the double is not determined by the
    numbers alone and defaults to 0 only when ``b1(V) = 0``.
    """
    g = V.genus
    if g < 1:
        raise ValidationError("fiber genus must be at least 1")
    ev = 2 - 2 * V.b1 + V.b_plus + V.b_minus
    if ev <= 4 - 4 * g:
        raise ValidationError(f"{V.name}: trivial fibration (no singular fibers)")
    if b1 is None:
        if V.b1:
            raise ValidationError(f"{V.name}: give b1 of the double explicitly")
        b1 = 0
    sigma = 2 * (V.b_plus - V.b_minus)
    euler = 2 * ev - 2 * (2 - 2 * g)
    tot = euler - 2 + 2 * b1
    if (tot + sigma) % 2 or tot < abs(sigma):
        raise ValidationError("inconsistent Betti data for the double")
    return Manifold(
        name=f"{V.name}#{V.name}",
        b1=b1,
        b_plus=(tot + sigma) // 2,
        b_minus=(tot - sigma) // 2,
        tight_surface_genus=2,
    )


# ----------------------------------------------------------------------
# Gluing along genus g >= 2 fibers
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class GluedClass:
    """A basic class seen through its pairings: ``(coeff, K.Sigma, K.D_side)``."""

    coeff: Fraction
    fiber: int
    d_side: int

    def __post_init__(self):
        object.__setattr__(self, "coeff", Fraction(self.coeff))


@dataclass(frozen=True)
class GluingInput:
    series_x: tuple[GluedClass, ...]
    series_z: tuple[GluedClass, ...]
    genus: int
    w_squares: tuple[int, int, int]  # (w_W^2, w_X^2, w_Z^2)
    w_fiber: tuple[int, int, int]  # w.Sigma for the three classes
    sigma_d: int  # Sigma.D in W
    d_square: int  # Q_W(D)
    d_squares_split: tuple[int, int]  # (D_X^2, D_Z^2)

    def __post_init__(self):
        object.__setattr__(self, "series_x", tuple(_as_glued(c) for c in self.series_x))
        object.__setattr__(self, "series_z", tuple(_as_glued(c) for c in self.series_z))
        if self.genus < 2:
            raise ValidationError("gluing needs fiber genus >= 2")
        if any(x % 2 == 0 for x in self.w_fiber):
            raise ValidationError("w.Sigma must be odd for w_W, w_X and w_Z")
        ww, wx, wz = self.w_squares
        if (ww - wx - wz) % 2:
            raise ValidationError("w_W^2 - w_X^2 - w_Z^2 must be even")
        if self.d_square != sum(self.d_squares_split):
            raise ValidationError("declared D^2 != D_X^2 + D_Z^2")

    @property
    def epsilon(self) -> int:
        ww, wx, wz = self.w_squares
        return -1 if ((self.genus - 1) * ((ww - wx - wz) // 2)) % 2 else 1


def _as_glued(c) -> GluedClass:
    return c if isinstance(c, GluedClass) else GluedClass(*c)


def munoz_glue(inp: GluingInput) -> QuadExpSeries:
    """Donaldson series of the fiber sum along ``tD`` from both sides' data.

    Only pairs whose fiber pairings are both ``2g-2`` or both ``-(2g-2)``
    contribute.
    """
    g = inp.genus
    top = 2 * g - 2
    scale = Fraction(2) ** (7 * g - 9) * inp.epsilon
    terms = []
    for a in inp.series_x:
        for b in inp.series_z:
            if a.fiber == b.fiber == top:
                terms.append((a.d_side + b.d_side + 2 * inp.sigma_d, -scale * a.coeff * b.coeff))
            elif a.fiber == b.fiber == -top:
                sign = -1 if g % 2 else 1
                terms.append((a.d_side + b.d_side - 2 * inp.sigma_d, sign * scale * a.coeff * b.coeff))
    return QuadExpSeries(Fraction(inp.d_square, 2), ExpSum(terms))


@dataclass(frozen=True)
class Factorization:
    lhs: Fraction
    rhs_x: Fraction
    rhs_z: Fraction
    epsilon: int
    nonvanishing: bool


def leading_factorization(inp: GluingInput) -> Factorization:
    """Top coefficient of the glued series against the one-sided sums.

    Needs the tight-surface configuration in which every extremal pair lands
    on the exponent ``+-(2g-2)``; the Gaussian factor is carried by
    ``gauss`` and never enters the coefficient.
    """
    g = inp.genus
    top = 2 * g - 2
    for a in inp.series_x:
        for b in inp.series_z:
            if a.fiber == b.fiber == top and a.d_side + b.d_side + 2 * inp.sigma_d != top:
                raise ValidationError("extremal pair does not land on exponent 2g-2")
            if a.fiber == b.fiber == -top and a.d_side + b.d_side - 2 * inp.sigma_d != -top:
                raise ValidationError("extremal pair does not land on exponent -(2g-2)")
    s = munoz_glue(inp)
    coeff = s.expsum.coefficient(top).to_fraction()
    lhs = coeff / (-(Fraction(2) ** (7 * g - 9)) * inp.epsilon)
    rx = sum((a.coeff for a in inp.series_x if a.fiber == top), Fraction(0))
    rz = sum((b.coeff for b in inp.series_z if b.fiber == top), Fraction(0))
    if lhs != rx * rz:
        raise MathCheckError(f"top coefficient {lhs} != {rx} * {rz}")
    return Factorization(lhs, rx, rz, inp.epsilon, lhs != 0)
