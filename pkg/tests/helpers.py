"""Random inputs shared across the test modules."""

from __future__ import annotations

import random
from fractions import Fraction

from donaldson.asymptotics import grid_model
from donaldson.geography import FibrationProfile
from donaldson.lattice import Lattice, diagonal_lattice, standard_lattice
from donaldson.lefschetz import LefschetzFibration
from donaldson.manifold import BasicClassEntry, Manifold
from donaldson.moves import GluedClass, GluingInput


def random_fraction(rng: random.Random, nonzero: bool = True) -> Fraction:
    while True:
        x = Fraction(rng.randint(-9, 9), rng.randint(1, 6))
        if x or not nonzero:
            return x


def random_lattice(rng: random.Random, b_plus: int, b_minus: int) -> Lattice:
    """Odd diagonal form, or the even form ``H^k`` when ``b+ = b-``."""
    if b_plus == b_minus and b_plus and rng.random() < 0.4:
        return standard_lattice(b_plus, b_minus, even=True, prefix="h")
    return standard_lattice(b_plus, b_minus, even=False, prefix="x")


def characteristic_class(rng: random.Random, L: Lattice) -> tuple:
    """Characteristic vector: all odd on a diagonal form, all even on ``H^k``."""
    if L.is_even:
        return tuple(2 * rng.randint(-2, 2) for _ in range(L.rank))
    return tuple(2 * rng.randint(-2, 2) + 1 for _ in range(L.rank))


def random_manifold(rng: random.Random, series_ready: bool = False, max_rank: int = 6) -> Manifold:
    """Manifold with at most four basic classes and ``beta = c * SW``.

    With ``series_ready`` the result has ``b1 = 0`` and odd ``b+ > 1`` so the
    structure formula applies; classes are characteristic so every ``w``
    gives integral sign exponents.
    """
    if series_ready:
        b_plus = rng.choice([3, 5] if max_rank >= 5 else [3])
        b_minus = rng.randint(0, max_rank - b_plus)
        b1 = 0
    else:
        rank = rng.randint(1, max_rank)
        b_plus = rng.randint(0, rank)
        b_minus = rank - b_plus
        b1 = rng.choice([0, 0, 1, 2])
    L = random_lattice(rng, b_plus, b_minus)
    c = random_fraction(rng)
    klasses = []
    for _ in range(rng.randint(0, 4)):
        k = characteristic_class(rng, L)
        if k not in klasses:
            klasses.append(k)
    entries = []
    for k in klasses:
        sw = rng.choice([-3, -2, -1, 1, 1, 2, 5])
        entries.append(BasicClassEntry(k, c * sw, sw))
    return Manifold(
        name=f"X{rng.randint(0, 10**6)}",
        b1=b1,
        b_plus=b_plus,
        b_minus=b_minus,
        lattice=L,
        canonical=klasses[0] if klasses and rng.random() < 0.5 else None,
        basic_classes=tuple(entries),
        spin=L.is_even and b1 == 0,
        tight_surface_genus=rng.choice([None, 2, 3]),
        orientation_sign=rng.choice([1, -1]),
    )


def random_class(rng: random.Random, L: Lattice, bound: int = 3) -> tuple:
    return tuple(rng.randint(-bound, bound) for _ in range(L.rank))


def random_gluing_input(rng: random.Random) -> GluingInput:
    """Gluing data in the tight configuration: every extremal pair lands on
    ``+-(2g-2)``; non-extremal classes carry arbitrary pairings."""
    g = rng.randint(2, 5)
    top = 2 * g - 2
    sigma_d = rng.randint(-2, 2)
    dx_top = rng.randint(-4, 4)
    dz_top = top - 2 * sigma_d - dx_top
    dx_bot = rng.randint(-4, 4)
    dz_bot = -top + 2 * sigma_d - dx_bot

    def side(d_top, d_bot):
        out = []
        for _ in range(rng.randint(0, 4)):
            kind = rng.choice(["top", "top", "bot", "other"])
            coeff = random_fraction(rng)
            if kind == "top":
                out.append(GluedClass(coeff, top, d_top))
            elif kind == "bot":
                out.append(GluedClass(coeff, -top, d_bot))
            else:
                f = rng.choice([x for x in range(-top + 1, top) if x % 2 == 0] or [0])
                out.append(GluedClass(coeff, f, rng.randint(-5, 5)))
        return tuple(out)

    wx, wz = rng.randint(-5, 5), rng.randint(-5, 5)
    ww = wx + wz + 2 * rng.randint(-3, 3)
    dxx, dzz = rng.randint(-4, 4), rng.randint(-4, 4)
    return GluingInput(
        series_x=side(dx_top, dx_bot),
        series_z=side(dz_top, dz_bot),
        genus=g,
        w_squares=(ww, wx, wz),
        w_fiber=tuple(2 * rng.randint(-2, 2) + 1 for _ in range(3)),
        sigma_d=sigma_d,
        d_square=dxx + dzz,
        d_squares_split=(dxx, dzz),
    )


def random_profile(rng: random.Random, g: int, name: str = "V") -> FibrationProfile:
    b1 = rng.randint(0, 2 * g)
    b_plus = rng.randint(1, 12)
    b_minus = rng.randint(1, 30)
    return FibrationProfile(name, b1, b_plus, b_minus, g)


def synthetic_fibration(g: int, fiber_genera, extra_plus: int = 1) -> LefschetzFibration:
    """Fibration lattice ``<sigma, e> + k<-1> + extra<+1>``.

    ``sigma`` is the fiber, ``e`` a (-1)-section, ``f_i`` the components
    ``F_i`` of the reducible fibers (``G_i = sigma - f_i``).  The canonical
    class is pinned by ``K.sigma = 2g-2``, ``K.e = -1`` and
    ``K.F_i = 2g(F_i) - 1``.
    """
    k = len(fiber_genera)
    n = 2 + k + extra_plus
    gram = [[0] * n for _ in range(n)]
    gram[0][1] = gram[1][0] = 1
    gram[1][1] = -1
    for i in range(k):
        gram[2 + i][2 + i] = -1
    for i in range(extra_plus):
        gram[2 + k + i][2 + k + i] = 1
    labels = ["sigma", "e"] + [f"f{i + 1}" for i in range(k)] + [f"p{i + 1}" for i in range(extra_plus)]
    L = Lattice(gram, labels)
    K = [2 * g - 3, 2 * g - 2] + [1 - 2 * gf for gf in fiber_genera] + [1] * extra_plus
    X = Manifold(
        name=f"synthetic_g{g}_k{k}",
        b1=0,
        b_plus=1 + extra_plus,
        b_minus=1 + k,
        lattice=L,
        canonical=tuple(K),
    )
    sigma = tuple(1 if j == 0 else 0 for j in range(n))
    e = tuple(1 if j == 1 else 0 for j in range(n))
    fibers = []
    for i in range(k):
        F = tuple(1 if j == 2 + i else 0 for j in range(n))
        G = tuple(s - f for s, f in zip(sigma, F))
        fibers.append((F, G))
    return LefschetzFibration(X, sigma, g, tuple(fibers), ((e, -1),))


def random_unimodular(rng: random.Random, n: int, steps: int = 6) -> list:
    """Product of elementary integer matrices, so the inverse is integral."""
    S = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(steps):
        if n < 2:
            break
        i, j = rng.sample(range(n), 2)
        c = rng.choice([-1, 1, 2])
        for col in range(n):
            S[i][col] += c * S[j][col]
    return S


def random_grid_model(rng: random.Random, max_dim: int = 10):
    """Grid-spectrum model: semisimple on ``|lambda| = 2g-2``, Jordan blocks below."""
    g = rng.randint(2, 4)
    blocks = []
    dim = 0
    # at least one top block so the leading constant can be nonzero
    for r in rng.sample(range(4), rng.randint(1, 4)):
        blocks.append((r, g - 1, 1))
        dim += 1
    while dim < max_dim and rng.random() < 0.7:
        k = rng.randint(0, g - 2)
        size = rng.randint(1, min(3, max_dim - dim))
        r = 0 if k == 0 else rng.randint(0, 3)
        blocks.append((r, k, size))
        dim += size
    rng.shuffle(blocks)
    left = [rng.randint(-3, 3) for _ in range(dim)]
    right = [rng.randint(-3, 3) for _ in range(dim)]
    conj = random_unimodular(rng, dim)
    b_plus = rng.choice([3, 5, 7])
    return grid_model(g, blocks, left, right, conj=conj, name="random", w_sq=rng.randint(-4, 4), b_plus=b_plus)


def diag_seed(beta=1, sw=1, b_plus: int = 3) -> Manifold:
    """``b+<1>`` with the single class 0: the smallest series-ready record."""
    L = diagonal_lattice([1] * b_plus, [f"a{i}" for i in range(b_plus)])
    return Manifold(
        name="seed",
        b1=0,
        b_plus=b_plus,
        b_minus=0,
        lattice=L,
        basic_classes=(BasicClassEntry(L.zero(), beta, sw),),
    )
