"""Exact computer algebra for Donaldson and Seiberg-Witten invariants of 4-manifolds."""

from .errors import (
    BlowdownError,
    DonaldsonError,
    LatticeError,
    MathCheckError,
    SpectrumError,
    ValidationError,
    WittenMismatch,
)
from .exact import (
    ExpSum,
    GaussianRational,
    Polynomial,
    QuadExpSeries,
    apply_poly_to_exponents,
    expsum_mul,
    gq,
    mul_hyperbolic,
    poly_from_roots,
    taylor_coefficient,
)
from .lattice import Lattice, pairing, signature, solve_in_span
from .manifold import (
    BasicClassEntry,
    EvalRequest,
    Manifold,
    adjunction_check,
    degree_congruence,
    donaldson_series,
    simple_type_inference,
    witten_consistency,
)

__all__ = [
    "BasicClassEntry",
    "BlowdownError",
    "DonaldsonError",
    "EvalRequest",
    "ExpSum",
    "GaussianRational",
    "Lattice",
    "LatticeError",
    "Manifold",
    "MathCheckError",
    "Polynomial",
    "QuadExpSeries",
    "SpectrumError",
    "ValidationError",
    "WittenMismatch",
    "adjunction_check",
    "apply_poly_to_exponents",
    "degree_congruence",
    "donaldson_series",
    "expsum_mul",
    "gq",
    "mul_hyperbolic",
    "pairing",
    "poly_from_roots",
    "signature",
    "simple_type_inference",
    "solve_in_span",
    "taylor_coefficient",
    "witten_consistency",
]

__version__ = "0.1.0"
