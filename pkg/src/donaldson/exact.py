"""Exact scalar and series arithmetic.

Rationals are :class:`fractions.Fraction`.  On top of that this module
provides Gaussian rationals, univariate polynomials over them, finite
exponential sums ``sum c * exp(lam * t)`` and the Gaussian-prefixed series
``exp(q t^2) * sum c * exp(lam * t)`` that every Donaldson series reduces to
along a single direction.  Nothing here is ever evaluated in floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, gcd
from numbers import Rational
from typing import Iterable, Mapping, Union

Scalar = Union[int, Fraction, "GaussianRational"]


class GaussianRational:
    """A complex number ``(a + b i) / d`` with integer a, b and d > 0.

    The triple is kept normalized (``gcd(a, b, d) == 1``), so equality and
    hashing are structural.  Real values hash like the equal
    :class:`~fractions.Fraction`, which lets ints, Fractions and Gaussian
    rationals share dictionary keys.
    """

    __slots__ = ("_a", "_b", "_d")

    def __new__(cls, re: Union[int, Fraction, str] = 0, im: Union[int, Fraction, str] = 0):
        if isinstance(re, GaussianRational) and im == 0:
            return re
        re = Fraction(re)
        im = Fraction(im)
        d = re.denominator * im.denominator // gcd(re.denominator, im.denominator)
        return _make(re.numerator * (d // re.denominator), im.numerator * (d // im.denominator), d)

    # -- accessors -------------------------------------------------------
    @property
    def re(self) -> Fraction:
        return Fraction(self._a, self._d)

    @property
    def im(self) -> Fraction:
        return Fraction(self._b, self._d)

    @property
    def is_real(self) -> bool:
        return self._b == 0

    def sort_key(self) -> tuple[Fraction, Fraction]:
        return (self.re, self.im)

    def conjugate(self) -> GaussianRational:
        return _raw(self._a, -self._b, self._d)

    def norm(self) -> Fraction:
        """Squared modulus ``re^2 + im^2``."""
        return Fraction(self._a * self._a + self._b * self._b, self._d * self._d)

    def to_fraction(self) -> Fraction:
        if self._b:
            raise ValueError(f"{self} is not real")
        return Fraction(self._a, self._d)

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if self._d == 1 and o._d == 1:
            return _raw(self._a + o._a, self._b + o._b, 1)
        return _make(self._a * o._d + o._a * self._d, self._b * o._d + o._b * self._d, self._d * o._d)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if self._d == 1 and o._d == 1:
            return _raw(self._a - o._a, self._b - o._b, 1)
        return _make(self._a * o._d - o._a * self._d, self._b * o._d - o._b * self._d, self._d * o._d)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        a = self._a * o._a - self._b * o._b
        b = self._a * o._b + self._b * o._a
        if self._d == 1 and o._d == 1:
            return _raw(a, b, 1)
        return _make(a, b, self._d * o._d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def inverse(self) -> GaussianRational:
        n = self._a * self._a + self._b * self._b
        if n == 0:
            raise ZeroDivisionError("GaussianRational division by zero")
        return _make(self._d * self._a, -self._d * self._b, n)

    def __neg__(self):
        return _raw(-self._a, -self._b, self._d)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- comparison ------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self._a == other._a and self._b == other._b and self._d == other._d
        if isinstance(other, (int, Rational)):
            return self._b == 0 and Fraction(self._a, self._d) == other
        return NotImplemented

    def __hash__(self):
        if self._b == 0:
            return hash(Fraction(self._a, self._d))
        return hash((self._a, self._b, self._d))

    def __bool__(self):
        return self._a != 0 or self._b != 0

    # -- display ---------------------------------------------------------
    def __str__(self):
        re, im = self.re, self.im
        if im == 0:
            return str(re)
        if re == 0:
            return _imag_str(im)
        sign = "+" if im > 0 else "-"
        return f"{re}{sign}{_imag_str(abs(im))}"

    def __repr__(self):
        return f"GaussianRational({str(self.re)!r}, {str(self.im)!r})"

    def __reduce__(self):
        return (GaussianRational, (str(self.re), str(self.im)))


def _imag_str(im: Fraction) -> str:
    if im == 1:
        return "i"
    if im == -1:
        return "-i"
    return f"{im}i"


def _raw(a: int, b: int, d: int) -> GaussianRational:
    obj = object.__new__(GaussianRational)
    obj._a = a
    obj._b = b
    obj._d = d
    return obj


def _make(a: int, b: int, d: int) -> GaussianRational:
    if d < 0:
        a, b, d = -a, -b, -d
    g = gcd(gcd(a, b), d)
    if g > 1:
        a //= g
        b //= g
        d //= g
    return _raw(a, b, d)


def _coerce(x) -> GaussianRational | None:
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, int):
        return _raw(x, 0, 1)
    if isinstance(x, Rational):
        return _make(x.numerator, 0, x.denominator)
    return None


def gq(x: Scalar) -> GaussianRational:
    """Coerce an int, Fraction or Gaussian rational to :class:`GaussianRational`."""
    o = _coerce(x)
    if o is None:
        raise TypeError(f"cannot convert {x!r} to GaussianRational")
    return o


ZERO = _raw(0, 0, 1)
ONE = _raw(1, 0, 1)
I = _raw(0, 1, 1)


def i_power(r: int) -> GaussianRational:
    """``i**r`` for any integer r."""
    return (ONE, I, -ONE, -I)[r % 4]


# ----------------------------------------------------------------------
# Polynomials
# ----------------------------------------------------------------------


class Polynomial:
    """Univariate polynomial over the Gaussian rationals, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [gq(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs: tuple[GaussianRational, ...] = tuple(cs)

    @classmethod
    def constant(cls, c: Scalar) -> Polynomial:
        return cls([c])

    @classmethod
    def monomial(cls, degree: int, c: Scalar = 1) -> Polynomial:
        return cls([0] * degree + [c])

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> GaussianRational:
        return self.coeffs[-1] if self.coeffs else ZERO

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x: Scalar) -> GaussianRational:
        x = gq(x)
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (ZERO,) * (n - len(self.coeffs))
        b = other.coeffs + (ZERO,) * (n - len(other.coeffs))
        return Polynomial(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        if not self.coeffs or not other.coeffs:
            return Polynomial()
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = Polynomial([1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        other = _as_poly(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs) + 1
        if dq <= 0:
            return Polynomial(), self
        quot = [ZERO] * dq
        lead_inv = other.leading.inverse()
        for k in range(dq - 1, -1, -1):
            c = rem[k + other.degree] * lead_inv
            quot[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] = rem[k + j] - c * b
        return Polynomial(quot), Polynomial(rem[: other.degree])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> Polynomial:
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError("polynomial division leaves a remainder")
        return q

    def reversed(self, degree: int | None = None) -> Polynomial:
        """``t**degree * p(1/t)``; ``degree`` defaults to ``self.degree``."""
        d = self.degree if degree is None else degree
        if d < self.degree:
            raise ValueError("reversal degree below polynomial degree")
        cs = list(self.coeffs) + [ZERO] * (d + 1 - len(self.coeffs))
        return Polynomial(reversed(cs))

    def scale(self, c: Scalar) -> Polynomial:
        c = gq(c)
        return Polynomial(a * c for a in self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Rational, GaussianRational)):
            return self.coeffs == Polynomial([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "Polynomial(0)"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            if not mono:
                parts.append(f"({c})" if not c.is_real else str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"({c}){mono}" if not c.is_real else f"{c}{mono}")
        return "Polynomial(" + " + ".join(parts).replace("+ -", "- ") + ")"


def _as_poly(x) -> Polynomial:
    return x if isinstance(x, Polynomial) else Polynomial([x])


def poly_from_roots(roots: Iterable[Scalar] | Mapping[Scalar, int]) -> Polynomial:
    """Monic polynomial with the given roots.

    ``roots`` is either a sequence (repeat a root for multiplicity) or a
    mapping from root to multiplicity.
    """
    if isinstance(roots, Mapping):
        items = [(gq(r), m) for r, m in roots.items()]
    else:
        items = [(gq(r), 1) for r in roots]
    p = Polynomial([1])
    for r, m in items:
        if m < 0:
            raise ValueError("negative multiplicity")
        p = p * Polynomial([-r, 1]) ** m
    return p


# ----------------------------------------------------------------------
# Exponential sums and Gaussian-prefixed series
# ----------------------------------------------------------------------


class ExpSum:
    """Finite sum ``sum_k c_k exp(lam_k t)`` with distinct exponents.

    Terms are stored sorted lexicographically on (re, im) of the exponent,
    zero coefficients dropped, so equal sums compare equal structurally.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Scalar, Scalar] | Iterable[tuple[Scalar, Scalar]] = ()):
        acc: dict[GaussianRational, GaussianRational] = {}
        pairs = terms.items() if isinstance(terms, Mapping) else terms
        for lam, c in pairs:
            lam = gq(lam)
            acc[lam] = acc.get(lam, ZERO) + gq(c)
        self.terms: tuple[tuple[GaussianRational, GaussianRational], ...] = tuple(
            sorted(((k, v) for k, v in acc.items() if v), key=lambda kv: kv[0].sort_key())
        )

    def __iter__(self):
        return iter(self.terms)

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def as_dict(self) -> dict[GaussianRational, GaussianRational]:
        return dict(self.terms)

    def coefficient(self, lam: Scalar) -> GaussianRational:
        lam = gq(lam)
        for k, v in self.terms:
            if k == lam:
                return v
        return ZERO

    def exponents(self) -> list[GaussianRational]:
        return [k for k, _ in self.terms]

    def __mul__(self, other):
        if isinstance(other, ExpSum):
            return ExpSum((a + b, c * e) for a, c in self.terms for b, e in other.terms)
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return ExpSum((k, v * o) for k, v in self.terms)

    def __rmul__(self, other):
        return self * other

    def __add__(self, other):
        if not isinstance(other, ExpSum):
            return NotImplemented
        return ExpSum(self.terms + other.terms)

    def __neg__(self):
        return ExpSum((k, -v) for k, v in self.terms)

    def __sub__(self, other):
        return self + (-other)

    def reflect(self) -> ExpSum:
        """Substitute ``t -> -t``."""
        return ExpSum((-k, v) for k, v in self.terms)

    def leading(self) -> tuple[GaussianRational, GaussianRational] | None:
        """Term of maximal real exponent (ties broken by imaginary part)."""
        return self.terms[-1] if self.terms else None

    def __eq__(self, other):
        if isinstance(other, ExpSum):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash(self.terms)

    def __repr__(self):
        inner = ", ".join(f"{k}: {v}" for k, v in self.terms)
        return "ExpSum({" + inner + "})"


def expsum_mul(a: ExpSum, b: ExpSum) -> ExpSum:
    return a * b


def apply_poly_to_exponents(s: ExpSum, f: Polynomial) -> ExpSum:
    """Replace every coefficient ``c_lam`` by ``f(lam) * c_lam``.

    This is the series-side image of evaluating the invariant on ``f(h)``.
    """
    return ExpSum((lam, f(lam) * c) for lam, c in s.terms)


@dataclass(frozen=True)
class QuadExpSeries:
    """Formal series ``exp(gauss * t^2) * expsum(t)``."""

    gauss: Fraction
    expsum: ExpSum

    def __post_init__(self):
        object.__setattr__(self, "gauss", Fraction(self.gauss))
        if not isinstance(self.expsum, ExpSum):
            object.__setattr__(self, "expsum", ExpSum(self.expsum))

    def is_zero(self) -> bool:
        return not self.expsum

    def __mul__(self, other):
        if isinstance(other, QuadExpSeries):
            return QuadExpSeries(self.gauss + other.gauss, self.expsum * other.expsum)
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return QuadExpSeries(self.gauss, self.expsum * o)

    __rmul__ = __mul__

    def __neg__(self):
        return QuadExpSeries(self.gauss, -self.expsum)

    def terms(self):
        return self.expsum.terms

    def leading(self):
        return self.expsum.leading()

    def taylor_coefficient(self, n: int) -> GaussianRational:
        return taylor_coefficient(self, n)

    def __repr__(self):
        return f"QuadExpSeries(q={self.gauss}, {self.expsum!r})"


def mul_hyperbolic(
    s: QuadExpSeries, a: Scalar, kind: str, quad_shift: Union[int, Fraction] = 0
) -> QuadExpSeries:
    """Multiply by ``exp(quad_shift t^2) * cosh(a t)`` (or ``sinh``)."""
    a = gq(a)
    half = Fraction(1, 2)
    if kind == "cosh":
        factor = ExpSum([(a, half), (-a, half)])
    elif kind == "sinh":
        factor = ExpSum([(a, half), (-a, -half)])
    else:
        raise ValueError(f"kind must be 'cosh' or 'sinh', got {kind!r}")
    return QuadExpSeries(s.gauss + Fraction(quad_shift), s.expsum * factor)


def taylor_coefficient(s: QuadExpSeries, n: int) -> GaussianRational:
    """``n!`` times the ``t**n`` coefficient of the series.

    Equal to ``sum_lam c_lam sum_{2a+b=n} n!/(a! b!) q^a lam^b``.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    q = s.gauss
    nf = factorial(n)
    # weights n!/(a! b!) q^a for a = 0..n//2, with b = n - 2a
    weights = [(n - 2 * a, gq(Fraction(nf, factorial(a) * factorial(n - 2 * a)) * q**a)) for a in range(n // 2 + 1)]
    if q == 0:
        weights = weights[:1]
    total = ZERO
    for lam, c in s.expsum.terms:
        acc = ZERO
        for b, w in weights:
            acc = acc + w * lam**b
        total = total + c * acc
    return total


