"""Growth of ``D(h^n)`` from a finite model of the Floer pairing.

A :class:`FloerModel` is a matrix standing in for ``mu(Sigma)`` together
with two vectors whose pairing ``left^T A^n right`` plays the role of
``D(h^n)``.  Everything is exact; eigenvalues are certified by
annihilating polynomials, never computed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import linalg
from .errors import MathCheckError, SpectrumError, ValidationError
from .exact import ONE, ZERO, GaussianRational, Polynomial, gq, i_power
from .manifold import d0_residue


def _low_factor(k: int) -> Polynomial:
    """``t^4 - (2k)^4``."""
    return Polynomial([-(2 * k) ** 4, 0, 0, 0, 1])


def grid_annihilator(g: int) -> Polynomial:
    """``prod_{k=0}^{g-1} (t^4 - (2k)^4)``: vanishes on the whole grid ``i^r (2k)``."""
    p = Polynomial([1])
    for k in range(g):
        p = p * _low_factor(k)
    return p


def build_f0(g: int) -> Polynomial:
    """``(t + (2g-2))(t^2 + (2g-2)^2) prod_{k=0}^{g-2} (t^4 - (2k)^4)``."""
    if g < 2:
        raise ValidationError("genus must be at least 2")
    top = 2 * g - 2
    p = Polynomial([top, 1]) * Polynomial([top * top, 0, 1])
    for k in range(g - 1):
        p = p * _low_factor(k)
    return p


def grid_points(g: int) -> list[GaussianRational]:
    pts = {gq(0)}
    for k in range(1, g):
        for r in range(4):
            pts.add(i_power(r) * (2 * k))
    return sorted(pts, key=lambda z: z.sort_key())


@dataclass(frozen=True)
class FloerModel:
    """Exact stand-in for ``(mu(Sigma), phi_X, phi_Z)``.

    ``w_sq``, ``b_plus`` and ``b1`` are optional metadata of the closed
    manifold the model came from; when present they fix the residue ``d0``.
    """

    genus: int
    action: tuple
    left: tuple
    right: tuple
    name: str = ""
    w_sq: Optional[int] = None
    b_plus: Optional[int] = None
    b1: int = 0

    def __post_init__(self):
        A = tuple(tuple(gq(x) for x in row) for row in self.action)
        object.__setattr__(self, "action", A)
        object.__setattr__(self, "left", tuple(gq(x) for x in self.left))
        object.__setattr__(self, "right", tuple(gq(x) for x in self.right))
        n = len(A)
        if self.genus < 2:
            raise ValidationError("genus must be at least 2")
        if n == 0 or any(len(row) != n for row in A):
            raise ValidationError("action must be a nonempty square matrix")
        if len(self.left) != n or len(self.right) != n:
            raise ValidationError("pairing vectors must match the matrix size")
        self.certify()

    @property
    def dim(self) -> int:
        return len(self.action)

    @property
    def top(self) -> int:
        return 2 * self.genus - 2

    def certify(self) -> None:
        """Spectrum in the grid and semisimple on ``|lambda| = 2g-2``.

        ``(prod_k (A^4 - (2k)^4))^dim = 0`` certifies the grid; killing the
        low part with its own annihilator to the power ``dim`` and then
        ``A^4 - (2g-2)^4`` once more certifies semisimplicity on top.
        """
        A = [list(r) for r in self.action]
        low = Polynomial([1])
        for k in range(self.genus - 1):
            low = low * _low_factor(k)
        P = linalg.poly_at_matrix(low**self.dim, A)
        Q = linalg.mat_mul(P, linalg.poly_at_matrix(_low_factor(self.genus - 1), A))
        if linalg.is_zero_matrix(Q):
            return
        G = linalg.poly_at_matrix(grid_annihilator(self.genus) ** self.dim, A)
        if not linalg.is_zero_matrix(G):
            raise SpectrumError("action has eigenvalues outside {i^r (2k)}", _residual(G))
        raise SpectrumError("top eigenvalues i^r (2g-2) must be semisimple", _residual(Q))

    def power_vector(self, n: int):
        v = list(self.right)
        A = [list(r) for r in self.action]
        for _ in range(n):
            v = linalg.mat_vec(A, v)
        return v


def _residual(M) -> str:
    for i, row in enumerate(M):
        for j, x in enumerate(row):
            if x:
                return f"entry ({i},{j}) = {x}"
    return "0"


def simulate_pairing(M: FloerModel, n: int) -> GaussianRational:
    """``left^T A^n right``."""
    if n < 0:
        raise ValidationError("n must be nonnegative")
    return linalg.dot(M.left, M.power_vector(n))


def pairing_sequence(M: FloerModel, length: int) -> list[GaussianRational]:
    A = [list(r) for r in M.action]
    v = list(M.right)
    out = []
    for _ in range(length):
        out.append(linalg.dot(M.left, v))
        v = linalg.mat_vec(A, v)
    return out


def annihilation_exponents(M: FloerModel) -> list[int]:
    """For ``k = 0..g-2`` the least ``m_k`` with ``(A^4 - (2k)^4)^{m_k}`` killing
    its generalized eigenspaces (rank stabilization)."""
    A = [list(r) for r in M.action]
    A4 = linalg.mat_pow(A, 4)
    out = []
    for k in range(M.genus - 1):
        c = (2 * k) ** 4
        B = [[A4[i][j] - (c if i == j else 0) for j in range(M.dim)] for i in range(M.dim)]
        m, P, r = 0, linalg.identity(M.dim), M.dim
        while True:
            P2 = linalg.mat_mul(P, B)
            r2 = linalg.rank(P2)
            if r2 == r:
                break
            m, P, r = m + 1, P2, r2
        out.append(m)
    return out


def build_p(g: int, mults: Sequence[int]) -> Polynomial:
    """``p0 prod_{k=0}^{g-2} (t^4 - (2k)^4)^{m_k}`` with ``p(2g-2) = 1``."""
    if len(mults) != g - 1:
        raise ValidationError(f"need {g - 1} exponents, got {len(mults)}")
    if any(m < 0 for m in mults):
        raise ValidationError("exponents must be nonnegative")
    p = Polynomial([1])
    for k, m in enumerate(mults):
        p = p * _low_factor(k) ** m
    return p.scale(p(2 * g - 2).inverse())


def projected_sequence(M: FloerModel, p: Polynomial, n_max: int) -> list[GaussianRational]:
    """``left^T p(A) A^n right`` for ``n = 0..n_max``.

    Raises :class:`SpectrumError` when ``p`` leaves low-eigenvalue content
    (``p(A)(A^4 - (2g-2)^4) != 0``).
    """
    A = [list(r) for r in M.action]
    PA = linalg.poly_at_matrix(p, A)
    check = linalg.mat_mul(PA, linalg.poly_at_matrix(_low_factor(M.genus - 1), A))
    if not linalg.is_zero_matrix(check):
        raise SpectrumError("annihilation exponents too small: low eigenvalues survive", _residual(check))
    v = linalg.mat_vec(PA, list(M.right))
    out = []
    for _ in range(n_max + 1):
        out.append(linalg.dot(M.left, v))
        v = linalg.mat_vec(A, v)
    return out


def projector(M: FloerModel, r: int):
    """Polynomial projector onto the ``i^r (2g-2)`` eigenspace."""
    A = [list(row) for row in M.action]
    lam = i_power(r) * M.top
    low = Polynomial([1])
    for k in range(M.genus - 1):
        low = low * _low_factor(k)
    e = low**M.dim
    for s in range(4):
        if s != r:
            e = e * Polynomial([-(i_power(s) * M.top), 1])
    e = e.scale(e(lam).inverse())
    return linalg.poly_at_matrix(e, A)


def projector_constants(M: FloerModel) -> tuple[GaussianRational, ...]:
    """``c_r = <pi_r left, pi_r right>`` computed with explicit projectors."""
    out = []
    for r in range(4):
        P = projector(M, r)
        out.append(linalg.dot(M.left, linalg.mat_vec(P, list(M.right))))
    return tuple(out)


def vandermonde_matrix() -> list[list[GaussianRational]]:
    return [[i_power(r * n) for r in range(4)] for n in range(4)]


def vandermonde_det() -> GaussianRational:
    return linalg.det(vandermonde_matrix())


def vandermonde_recover(vals: Sequence, g: int) -> tuple[GaussianRational, ...]:
    """Solve ``vals[n] / (2g-2)^n = sum_r i^{rn} c_r`` for ``n = 0..3``."""
    if g < 2:
        raise ValidationError("genus must be at least 2")
    if len(vals) < 4:
        raise ValidationError("need four values")
    top = 2 * g - 2
    rhs = [gq(vals[n]) / top**n for n in range(4)]
    sol = linalg.solve(vandermonde_matrix(), rhs)
    return tuple(sol)


def residue_combination(c: Sequence[GaussianRational], d0: int) -> GaussianRational:
    """``sum_r i^{r d0} c_r``: the growth constant of ``D(h^n)`` for ``n = d0 (mod 4)``."""
    total = ZERO
    for r, cr in enumerate(c):
        total = total + i_power(r * d0) * cr
    return total


@dataclass
class AsymptoticReport:
    d0: int
    leading: GaussianRational
    growth: int
    c_r: tuple
    a: tuple
    checks: list = field(default_factory=list)

    @property
    def contradiction(self) -> bool:
        return not self.leading

    def to_dict(self) -> dict:
        return {
            "d0": self.d0,
            "leading": _gq_json(self.leading),
            "growth": self.growth,
            "c_r": [_gq_json(x) for x in self.c_r],
            "a": [_gq_json(x) for x in self.a],
            "checks": [{"name": n, "passed": ok, "values": v} for n, ok, v in self.checks],
            "contradiction_branch": self.contradiction,
        }


def _gq_json(x: GaussianRational) -> dict:
    return {"re": str(x.re), "im": str(x.im)}


def required_length(g: int, mults: Sequence[int]) -> int:
    d = 4 * sum(mults)
    return 2 * d + 8


def generating_asymptotics(D_seq: Sequence, g: int, mults: Sequence[int], d0: int) -> AsymptoticReport:
    """Partial-fraction extraction of ``a_{d0}`` from ``F(t) = sum D(h^j) t^j``.

    ``(1 - (2g-2)^4 t^4) t^d p(1/t) F(t)`` must truncate to a polynomial
    ``q`` of degree ``< d + 4``; then ``q = a(t) P(t) + (1 - (2g-2)^4 t^4) s(t)``
    with ``P = t^d p(1/t)`` is solved for ``a``.  The reported leading
    constant is ``a_{d0} / (2g-2)^{d0}``, so ``D(h^n) ~ leading (2g-2)^n``.
    """
    p = build_p(g, mults)
    d = p.degree
    D = [gq(x) for x in D_seq]
    need = required_length(g, mults)
    if len(D) < need:
        raise ValidationError(f"sequence too short: need {need} terms, got {len(D)}")
    top = 2 * g - 2
    P = p.reversed(d)
    m = Polynomial([1, 0, 0, 0, -(top**4)])
    B = m * P
    F = Polynomial(D)
    prod = B * F
    checks = []
    tail = [prod.coeffs[k] if k < len(prod.coeffs) else ZERO for k in range(d + 4, len(D))]
    truncates = not any(tail)
    checks.append(("product_truncates", truncates, {"degree_bound": d + 4}))
    if not truncates:
        raise MathCheckError("(1 - (2g-2)^4 t^4) t^d p(1/t) F(t) is not a polynomial of degree < d+4")
    q = Polynomial(prod.coeffs[: d + 4])

    # unknowns a_0..a_3, s_0..s_{d-1}; equations: coefficients 0..d+3
    nrows = d + 4
    cols = []
    for j in range(4):
        col = Polynomial.monomial(j) * P
        cols.append([col.coeffs[i] if i < len(col.coeffs) else ZERO for i in range(nrows)])
    for j in range(d):
        col = Polynomial.monomial(j) * m
        cols.append([col.coeffs[i] if i < len(col.coeffs) else ZERO for i in range(nrows)])
    Mx = [[cols[c][r] for c in range(len(cols))] for r in range(nrows)]
    rhs = [q.coeffs[i] if i < len(q.coeffs) else ZERO for i in range(nrows)]
    sol = linalg.solve(Mx, rhs)
    if sol is None:
        raise MathCheckError("partial-fraction system is inconsistent")
    a = tuple(sol[:4])
    leading = a[d0 % 4] / top ** (d0 % 4)

    # Vandermonde route on the projected sequence D(p(h) h^n) = sum_j p_j D_{j+n}
    proj = []
    for n in range(4):
        acc = ZERO
        for j, pj in enumerate(p.coeffs):
            acc = acc + pj * D[j + n]
        proj.append(acc)
    c = vandermonde_recover(proj, g)
    combo = residue_combination(c, d0)
    checks.append(("vandermonde_route_agrees", combo == leading, {"vandermonde": str(combo), "partial_fractions": str(leading)}))
    checks.append(("nonzero_leading", bool(leading), {"leading": str(leading)}))
    return AsymptoticReport(d0 % 4, leading, top, c, a, checks)


def model_report(M: FloerModel, d0: Optional[int] = None) -> AsymptoticReport:
    """Run the whole pipeline on a model and add the projector-route check."""
    if d0 is None:
        if M.w_sq is None or M.b_plus is None:
            raise ValidationError("model carries no (w^2, b+) data; pass d0")
        d0 = d0_residue(M.w_sq, M.b_plus, M.b1)
    elif M.w_sq is not None and M.b_plus is not None and d0 % 4 != d0_residue(M.w_sq, M.b_plus, M.b1):
        raise ValidationError("d0 disagrees with the degree congruence of the model")
    mults = annihilation_exponents(M)
    D = pairing_sequence(M, required_length(M.genus, mults))
    rep = generating_asymptotics(D, M.genus, mults, d0)
    proj = residue_combination(projector_constants(M), d0)
    rep.checks.append(("projector_route_agrees", proj == rep.leading, {"projector": str(proj)}))
    if M.w_sq is not None and M.b_plus is not None:
        dc = d0_residue(M.w_sq, M.b_plus, M.b1)
        rep.checks.append(("d0_matches_congruence", dc == rep.d0, {"congruence": dc}))
    return rep


def build_f1(M: FloerModel) -> Polynomial:
    """Characteristic polynomial with every factor ``t - (2g-2)`` divided out."""
    chi = linalg.charpoly([list(r) for r in M.action])
    lin = Polynomial([-M.top, 1])
    while chi(M.top) == 0 and chi.degree > 0:
        chi = chi.exact_div(lin)
    return chi


def build_f(M: FloerModel) -> Polynomial:
    return build_f0(M.genus) * build_f1(M)


def grid_model(
    g: int,
    blocks: Sequence[tuple],
    left: Sequence,
    right: Sequence,
    conj: Optional[Sequence[Sequence]] = None,
    name: str = "",
    **meta,
) -> FloerModel:
    """Model from Jordan blocks ``(r, k, size)`` with eigenvalue ``i^r (2k)``,
    conjugated by ``conj`` (an invertible matrix) when given."""
    n = sum(b[2] for b in blocks)
    J = [[ZERO] * n for _ in range(n)]
    pos = 0
    for r, k, size in blocks:
        lam = i_power(r) * (2 * k)
        for j in range(size):
            J[pos + j][pos + j] = lam
            if j + 1 < size:
                J[pos + j][pos + j + 1] = ONE
        pos += size
    A = J
    if conj is not None:
        S = [[gq(x) for x in row] for row in conj]
        A = linalg.mat_mul(linalg.mat_mul(S, J), linalg.inverse(S))
    return FloerModel(g, A, left, right, name=name, **meta)
