"""JSON catalog documents and the built-in catalog.

Rationals are written as ``"p/q"`` strings and Gaussian rationals as
``{"re": "p/q", "im": "p/q"}`` so nothing passes through floats.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Any

from .asymptotics import FloerModel, grid_model
from .errors import ValidationError
from .exact import GaussianRational, gq
from .geography import FibrationProfile, elliptic_profile, hypersurface_invariants, stipsicz_profiles
from .lattice import Lattice, diagonal_lattice, standard_lattice
from .lefschetz import LefschetzFibration, pencil_to_fibration
from .manifold import BasicClassEntry, Manifold
from .moves import blowup

SCHEMA_VERSION = "1"


def rat_to_json(x) -> str:
    return str(Fraction(x))


def rat_from_json(s) -> Fraction:
    if isinstance(s, bool) or isinstance(s, float):
        raise ValidationError(f"rational must be an int or 'p/q' string, got {s!r}")
    try:
        return Fraction(s)
    except (ValueError, TypeError, ZeroDivisionError):
        raise ValidationError(f"bad rational {s!r}") from None


def gq_to_json(x) -> dict:
    x = gq(x)
    return {"re": str(x.re), "im": str(x.im)}


def gq_from_json(v) -> GaussianRational:
    if isinstance(v, dict):
        return GaussianRational(rat_from_json(v.get("re", 0)), rat_from_json(v.get("im", 0)))
    return gq(rat_from_json(v))


def class_from_json(v, L: Lattice) -> tuple:
    """A class given as a coordinate list or as ``{label: coefficient}``."""
    if isinstance(v, dict):
        out = [0] * L.rank
        for label, c in v.items():
            out[L.index(label)] += int(c)
        return tuple(out)
    if not isinstance(v, list) or len(v) != L.rank:
        raise ValidationError(f"class {v!r} does not match lattice rank {L.rank}")
    return tuple(int(x) for x in v)


def lattice_to_json(L: Lattice) -> dict:
    return {"gram": [list(r) for r in L.gram], "labels": list(L.basis_labels)}


def lattice_from_json(d) -> Lattice:
    return Lattice(d["gram"], tuple(d.get("labels", ())))


def manifold_to_json(X: Manifold) -> dict:
    return {
        "name": X.name,
        "b1": X.b1,
        "b_plus": X.b_plus,
        "b_minus": X.b_minus,
        "lattice": None if X.lattice is None else lattice_to_json(X.lattice),
        "canonical": None if X.canonical is None else list(X.canonical),
        "basic_classes": [
            {
                "klass": list(e.klass),
                "beta": None if e.beta is None else rat_to_json(e.beta),
                "sw": e.sw,
                "order": e.order,
            }
            for e in X.basic_classes
        ],
        "simple_type": X.simple_type,
        "finite_type_order": X.finite_type_order,
        "spin": X.spin,
        "tight_surface_genus": X.tight_surface_genus,
        "orientation_sign": X.orientation_sign,
        "full_data": X.full_data,
    }


def manifold_from_json(d: dict) -> Manifold:
    L = None if d.get("lattice") is None else lattice_from_json(d["lattice"])
    classes = []
    for e in d.get("basic_classes", []):
        if L is None:
            raise ValidationError(f"{d.get('name')}: classes need a lattice")
        classes.append(
            BasicClassEntry(
                class_from_json(e["klass"], L),
                None if e.get("beta") is None else rat_from_json(e["beta"]),
                e.get("sw"),
                e.get("order", 0),
            )
        )
    canonical = d.get("canonical")
    if canonical is not None:
        if L is None:
            raise ValidationError(f"{d.get('name')}: canonical class needs a lattice")
        canonical = class_from_json(canonical, L)
    return Manifold(
        name=d["name"],
        b1=d["b1"],
        b_plus=d["b_plus"],
        b_minus=d["b_minus"],
        lattice=L,
        canonical=canonical,
        basic_classes=tuple(classes),
        simple_type=d.get("simple_type", True),
        finite_type_order=d.get("finite_type_order", 0),
        spin=d.get("spin", False),
        tight_surface_genus=d.get("tight_surface_genus"),
        orientation_sign=d.get("orientation_sign", 1),
        full_data=d.get("full_data", False),
    )


def profile_to_json(p: FibrationProfile) -> dict:
    return {
        "kind": "profile",
        "name": p.name,
        "b1": p.b1,
        "b_plus": p.b_plus,
        "b_minus": p.b_minus,
        "genus": p.genus,
        "relatively_minimal": p.relatively_minimal,
    }


def fibration_to_json(f: LefschetzFibration) -> dict:
    return {
        "kind": "lefschetz",
        "name": f.manifold.name,
        "manifold": f.manifold.name,
        "fiber": list(f.fiber),
        "genus": f.genus,
        "reducible_fibers": [[list(F), list(G)] for F, G in f.reducible_fibers],
        "sections": [[list(E), s] for E, s in f.sections],
        "relatively_minimal": f.relatively_minimal,
        "h1_generated": f.h1_generated,
    }


def model_to_json(M: FloerModel) -> dict:
    return {
        "name": M.name,
        "genus": M.genus,
        "action": [[gq_to_json(x) for x in row] for row in M.action],
        "left": [gq_to_json(x) for x in M.left],
        "right": [gq_to_json(x) for x in M.right],
        "w_sq": M.w_sq,
        "b_plus": M.b_plus,
        "b1": M.b1,
    }


def model_from_json(d: dict) -> FloerModel:
    return FloerModel(
        genus=d["genus"],
        action=[[gq_from_json(x) for x in row] for row in d["action"]],
        left=[gq_from_json(x) for x in d["left"]],
        right=[gq_from_json(x) for x in d["right"]],
        name=d.get("name", ""),
        w_sq=d.get("w_sq"),
        b_plus=d.get("b_plus"),
        b1=d.get("b1", 0),
    )


@dataclass
class Catalog:
    manifolds: dict = field(default_factory=dict)
    fibrations: dict = field(default_factory=dict)  # name -> FibrationProfile | LefschetzFibration
    floer_models: dict = field(default_factory=dict)
    schema_version: str = SCHEMA_VERSION

    def add_manifold(self, X: Manifold) -> None:
        if X.name in self.manifolds:
            raise ValidationError(f"duplicate manifold {X.name!r}")
        self.manifolds[X.name] = X

    def add_fibration(self, name: str, f) -> None:
        if name in self.fibrations:
            raise ValidationError(f"duplicate fibration {name!r}")
        self.fibrations[name] = f

    def add_model(self, M: FloerModel) -> None:
        if M.name in self.floer_models:
            raise ValidationError(f"duplicate model {M.name!r}")
        self.floer_models[M.name] = M

    def manifold(self, name: str) -> Manifold:
        try:
            return self.manifolds[name]
        except KeyError:
            raise ValidationError(f"unknown manifold {name!r}") from None

    def fibration(self, name: str):
        try:
            return self.fibrations[name]
        except KeyError:
            raise ValidationError(f"unknown fibration {name!r}") from None

    def model(self, name: str) -> FloerModel:
        try:
            return self.floer_models[name]
        except KeyError:
            raise ValidationError(f"unknown Floer model {name!r}") from None

    def to_json(self) -> dict:
        fibs = []
        for name, f in self.fibrations.items():
            d = profile_to_json(f) if isinstance(f, FibrationProfile) else fibration_to_json(f)
            d["name"] = name
            fibs.append(d)
        return {
            "schema_version": self.schema_version,
            "manifolds": [manifold_to_json(X) for X in self.manifolds.values()],
            "fibrations": fibs,
            "floer_models": [model_to_json(M) for M in self.floer_models.values()],
        }

    @classmethod
    def from_json(cls, doc: dict) -> Catalog:
        if not isinstance(doc, dict):
            raise ValidationError("catalog must be a JSON object")
        if doc.get("schema_version") != SCHEMA_VERSION:
            raise ValidationError(f"unsupported schema_version {doc.get('schema_version')!r}")
        cat = cls()
        try:
            for d in doc.get("manifolds", []):
                cat.add_manifold(manifold_from_json(d))
            for d in doc.get("fibrations", []):
                kind = d.get("kind", "profile")
                if kind == "profile":
                    f = FibrationProfile(d["name"], d["b1"], d["b_plus"], d["b_minus"], d["genus"], d.get("relatively_minimal", True))
                elif kind == "lefschetz":
                    X = cat.manifold(d["manifold"])
                    L = X.lattice
                    if L is None:
                        raise ValidationError(f"fibration {d['name']}: manifold has no lattice")
                    f = LefschetzFibration(
                        manifold=X,
                        fiber=class_from_json(d["fiber"], L),
                        genus=d["genus"],
                        reducible_fibers=tuple(
                            (class_from_json(F, L), class_from_json(G, L)) for F, G in d.get("reducible_fibers", [])
                        ),
                        sections=tuple((class_from_json(E, L), s) for E, s in d.get("sections", [])),
                        relatively_minimal=d.get("relatively_minimal", True),
                        h1_generated=d.get("h1_generated", False),
                    )
                else:
                    raise ValidationError(f"unknown fibration kind {kind!r}")
                cat.add_fibration(d["name"], f)
            for d in doc.get("floer_models", []):
                cat.add_model(model_from_json(d))
        except KeyError as exc:
            raise ValidationError(f"missing field {exc}") from None
        return cat


def load(path) -> Catalog:
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"{path}: not valid JSON ({exc})") from None
    return Catalog.from_json(doc)


def dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def save(cat: Catalog, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(cat.to_json()))


# ----------------------------------------------------------------------
# Built-in catalog
# ----------------------------------------------------------------------


def k3() -> Manifold:
    """K3 with its single basic class 0 (SW = 1, beta = 1)."""
    L = standard_lattice(3, 19, even=True, prefix="k")
    zero = L.zero()
    return Manifold(
        name="K3",
        b1=0,
        b_plus=3,
        b_minus=19,
        lattice=L,
        canonical=zero,
        basic_classes=(BasicClassEntry(zero, 1, 1),),
        spin=True,
        tight_surface_genus=2,
        full_data=True,
    )


def pencil_seed() -> Manifold:
    """Synthetic symplectic-type record with ``omega^2 = 1``, ``K.omega = 1``.

    ``K = (1, 3, 3, 1, 1, 1, 1)`` on ``3<1> + 4<-1>`` has
    ``K^2 = 3 sigma + 2 chi = 15``.
    """
    L = diagonal_lattice([1, 1, 1, -1, -1, -1, -1], ["w", "a", "b", "c1", "c2", "c3", "c4"])
    K = (1, 3, 3, 1, 1, 1, 1)
    negK = tuple(-x for x in K)
    return Manifold(
        name="pencil_seed",
        b1=0,
        b_plus=3,
        b_minus=4,
        lattice=L,
        canonical=K,
        basic_classes=(BasicClassEntry(K, None, 1), BasicClassEntry(negK, None, -1)),
        full_data=False,
    )


def builtin_models() -> list[FloerModel]:
    top1 = grid_model(2, [(0, 1, 1)], [3], [1], name="top_1x1", w_sq=0, b_plus=3)
    conj8 = [[1 if i == j else (1 if j == i + 1 else 0) for j in range(8)] for i in range(8)]
    grid8 = grid_model(
        3,
        [(0, 2, 1), (1, 2, 1), (2, 2, 1), (3, 2, 1), (0, 1, 2), (2, 1, 1), (0, 0, 1)],
        [1, 2, -1, 1, 3, 0, 1, 2],
        [2, 1, 1, -1, 1, 1, 0, 1],
        conj=conj8,
        name="grid_8x8",
        w_sq=-1,
        b_plus=3,
    )
    conj6 = [[1, 0, 0, 0, 0, 0], [1, 1, 0, 0, 0, 0], [0, 1, 1, 0, 0, 0], [0, 0, 2, 1, 0, 0], [0, 0, 0, 1, 1, 0], [1, 0, 0, 0, 1, 1]]
    mixed = grid_model(
        2,
        [(0, 1, 1), (1, 1, 1), (3, 1, 1), (0, 0, 3)],
        [GaussianRational(1, 1), 2, 0, 1, -1, 1],
        [1, GaussianRational(0, 1), 1, 2, 0, 1],
        conj=conj6,
        name="mixed_6x6",
        w_sq=0,
        b_plus=5,
    )
    return [top1, grid8, mixed]


def builtin_catalog() -> Catalog:
    cat = Catalog()
    K3 = k3()
    cat.add_manifold(K3)
    cat.add_manifold(blowup(K3))
    for n in range(1, 7):
        cat.add_manifold(elliptic_profile(n))
    for d in range(1, 13):
        e, sigma, bp, bm = hypersurface_invariants(d)
        cat.add_manifold(Manifold(name=f"hypersurface_d{d}", b1=0, b_plus=bp, b_minus=bm, spin=d % 2 == 0))
    seed = pencil_seed()
    cat.add_manifold(seed)
    fib = pencil_to_fibration(seed, seed.lattice.basis_vector("w"), 3).fibration
    fib = replace(fib, manifold=fib.manifold.with_(name="pencil_seed_blown_up"))
    cat.add_manifold(fib.manifold)
    cat.add_fibration("pencil_blowup", fib)
    for g in range(2, 21):
        v1, v2 = stipsicz_profiles(g)
        cat.add_fibration(v1.name, v1)
        cat.add_fibration(v2.name, v2)
    for g in (2, 3, 6, 10):
        cat.add_fibration(f"start_g{g}", FibrationProfile(f"start_g{g}", 0, 3, 19, g))
    for M in builtin_models():
        cat.add_model(M)
    return cat
