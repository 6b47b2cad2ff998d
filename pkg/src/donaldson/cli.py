"""Command-line front end.

Exit codes: 0 success, 2 validation failure, 3 failed mathematical check.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import catalog as cat_mod
from .asymptotics import model_report
from .errors import MathCheckError, ValidationError
from .exact import QuadExpSeries
from .geography import HYPERSURFACE, KNOT_SURGERY, FibrationProfile, plan_fiber_sum
from .lattice import Lattice
from .lefschetz import (
    LefschetzFibration,
    decompose_canonical_difference,
    nonminimal_uniqueness,
    section_pairing_check,
    sw_max_uniqueness,
)
from .manifold import EvalRequest, donaldson_series
from .moves import GluingInput, blowdown, blowup, fiber_sum_numerics, leading_factorization, munoz_glue

EXIT_OK, EXIT_VALIDATION, EXIT_MATH = 0, 2, 3

MODE_ALIASES = {
    "hypersurface": HYPERSURFACE,
    "knot": KNOT_SURGERY,
    "knot_surgery": KNOT_SURGERY,
    HYPERSURFACE: HYPERSURFACE,
    KNOT_SURGERY: KNOT_SURGERY,
}


class CheckFailed(Exception):
    """A command ran but its report contains failing checks."""

    def __init__(self, report):
        super().__init__("checks failed")
        self.report = report


def parse_class(text: str, L: Lattice) -> tuple:
    """``"1,0,-1"`` or ``"E1=1,k0=-2"``; ``"0"`` is the zero class."""
    text = text.strip()
    if text in ("0", ""):
        return L.zero()
    parts = [p.strip() for p in text.split(",")]
    if any("=" in p for p in parts):
        out = [0] * L.rank
        for p in parts:
            label, _, c = p.partition("=")
            out[L.index(label.strip())] += int(c)
        return tuple(out)
    if len(parts) != L.rank:
        raise ValidationError(f"class {text!r} has {len(parts)} entries, lattice rank is {L.rank}")
    return tuple(int(p) for p in parts)


def _series_report(s: QuadExpSeries) -> dict:
    lead = s.leading()
    return {
        "gauss": str(s.gauss),
        "terms": [{"exponent": cat_mod.gq_to_json(k), "coefficient": cat_mod.gq_to_json(v)} for k, v in s.terms()],
        "leading": None if lead is None else {"exponent": cat_mod.gq_to_json(lead[0]), "coefficient": cat_mod.gq_to_json(lead[1])},
        "zero_series": s.is_zero(),
    }


def cmd_series(cat, args) -> dict:
    X = cat.manifold(args.manifold)
    if X.lattice is None:
        raise ValidationError(f"{X.name}: no lattice")
    w = parse_class(args.w, X.lattice)
    h = parse_class(args.h, X.lattice)
    return {"manifold": X.name, "series": _series_report(donaldson_series(X, EvalRequest(w, h)))}


def cmd_blowup(cat, args) -> dict:
    return {"manifold": cat_mod.manifold_to_json(blowup(cat.manifold(args.manifold), args.label))}


def cmd_blowdown(cat, args) -> dict:
    X = cat.manifold(args.manifold)
    if X.lattice is None:
        raise ValidationError(f"{X.name}: no lattice")
    E = parse_class(args.exceptional, X.lattice) if "=" in args.exceptional or "," in args.exceptional else X.lattice.basis_vector(args.exceptional)
    return {"manifold": cat_mod.manifold_to_json(blowdown(X, E))}


def _profile(cat, name: str) -> FibrationProfile:
    f = cat.fibration(name)
    if not isinstance(f, FibrationProfile):
        raise ValidationError(f"{name!r} is not a fibration profile")
    return f


def cmd_fibersum(cat, args) -> dict:
    base = _profile(cat, args.base)
    cur = (base.b1, base.b_plus, base.b_minus)
    steps = []
    for name in args.summand:
        V = _profile(cat, name)
        if V.genus != base.genus:
            raise ValidationError(f"{name}: fiber genus {V.genus} != {base.genus}")
        out = fiber_sum_numerics(cur, V, base.genus)
        steps.append({"summand": name, "b1": out.b1, "b_plus": out.b_plus, "b_minus": out.b_minus, "sigma": out.sigma, "euler": out.euler})
        cur = out.as_triple()
    return {"base": base.name, "genus": base.genus, "steps": steps}


def _gluing_from_json(d: dict) -> GluingInput:
    try:
        return GluingInput(
            series_x=tuple((Fraction(c["coeff"]), c["fiber"], c["d_side"]) for c in d["series_x"]),
            series_z=tuple((Fraction(c["coeff"]), c["fiber"], c["d_side"]) for c in d["series_z"]),
            genus=d["genus"],
            w_squares=tuple(d["w_squares"]),
            w_fiber=tuple(d["w_fiber"]),
            sigma_d=d["sigma_d"],
            d_square=d["d_square"],
            d_squares_split=tuple(d["d_squares_split"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"bad gluing input: {exc}") from None


def cmd_glue(cat, args) -> dict:
    import json

    with open(args.input, encoding="utf-8") as fh:
        inp = _gluing_from_json(json.load(fh))
    report = {"epsilon": inp.epsilon, "series": _series_report(munoz_glue(inp))}
    if args.factorize:
        fac = leading_factorization(inp)
        report["factorization"] = {
            "lhs": str(fac.lhs),
            "rhs_x": str(fac.rhs_x),
            "rhs_z": str(fac.rhs_z),
            "nonvanishing": fac.nonvanishing,
        }
    return report


def cmd_constraints(cat, args) -> dict:
    f = cat.fibration(args.fibration)
    if not isinstance(f, LefschetzFibration):
        raise ValidationError(f"{args.fibration!r} is not a Lefschetz fibration record")
    L = f.lattice
    top = 2 * f.genus - 2
    if args.klass:
        candidates = [parse_class(args.klass, L)]
    else:
        candidates = [e.klass for e in f.manifold.basic_classes if L.pairing(e.klass, f.fiber) == top]
    rows = []
    for K in candidates:
        dec = decompose_canonical_difference(f, K)
        v = nonminimal_uniqueness(f, K)
        row = {
            "klass": list(K),
            "decomposition": {"n": dec.n, "c": list(dec.c), "valid": dec.valid, "failure_reason": dec.failure_reason},
            "nonminimal_uniqueness": {"status": v.status, "reason": v.reason},
        }
        if f.minus_one_sections():
            row["section_pairing"] = section_pairing_check(f, K)
        rows.append(row)
    report = {"fibration": args.fibration, "genus": f.genus, "classes": rows}
    if f.manifold.sw_classes():
        v = sw_max_uniqueness(f)
        report["sw_max_uniqueness"] = {"status": v.status, "reason": v.reason}
    return report


def cmd_plan(cat, args) -> dict:
    start = _profile(cat, args.fibration)
    cert = plan_fiber_sum(start, MODE_ALIASES[args.mode])
    doc = cert.to_dict()
    if not cert.ok:
        raise CheckFailed(doc)
    return doc


def cmd_asymptotics(cat, args) -> dict:
    M = cat.model(args.model)
    rep = model_report(M, args.d0)
    doc = rep.to_dict()
    doc["model"] = M.name
    if not all(ok for _, ok, _ in rep.checks):
        raise CheckFailed(doc)
    return doc


def cmd_catalog_validate(cat, args) -> dict:
    return {
        "valid": True,
        "schema_version": cat.schema_version,
        "manifolds": len(cat.manifolds),
        "fibrations": len(cat.fibrations),
        "floer_models": len(cat.floer_models),
    }


def build_parser() -> argparse.ArgumentParser:
    def flags(default):
        # subcommands suppress defaults so flags given before the command survive
        parser = argparse.ArgumentParser(add_help=False)
        parser.add_argument("--catalog", default=default(None), help="catalog JSON file (default: built-in catalog)")
        parser.add_argument("--out", default=default(None), help="write the report here instead of stdout")
        parser.add_argument("--format", choices=("json", "text"), default=default("json"))
        return parser

    top = flags(lambda v: v)
    common = flags(lambda v: argparse.SUPPRESS)
    p = argparse.ArgumentParser(prog="donaldson", description="Exact Donaldson/Seiberg-Witten invariant engine", parents=[top])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("series", parents=[common], help="Donaldson series of a catalog manifold")
    s.add_argument("manifold")
    s.add_argument("--w", default="0")
    s.add_argument("--h", required=True)
    s.set_defaults(func=cmd_series)

    s = sub.add_parser("blowup", parents=[common], help="blow up a manifold once")
    s.add_argument("manifold")
    s.add_argument("--label")
    s.set_defaults(func=cmd_blowup)

    s = sub.add_parser("blowdown", parents=[common], help="blow down along an exceptional class")
    s.add_argument("manifold")
    s.add_argument("exceptional", help="basis label or class")
    s.set_defaults(func=cmd_blowdown)

    s = sub.add_parser("fibersum", parents=[common], help="Betti numbers of repeated fiber sums")
    s.add_argument("base")
    s.add_argument("summand", nargs="+")
    s.set_defaults(func=cmd_fibersum)

    s = sub.add_parser("glue", parents=[common], help="glued series from a gluing-input JSON file")
    s.add_argument("input")
    s.add_argument("--factorize", action="store_true")
    s.set_defaults(func=cmd_glue)

    s = sub.add_parser("constraints", parents=[common], help="basic-class constraints on a fibration")
    s.add_argument("fibration")
    s.add_argument("--klass")
    s.set_defaults(func=cmd_constraints)

    s = sub.add_parser("plan", parents=[common], help="plan a fiber-sum construction")
    s.add_argument("fibration")
    s.add_argument("--mode", choices=sorted(MODE_ALIASES), default="hypersurface")
    s.set_defaults(func=cmd_plan)

    s = sub.add_parser("asymptotics", parents=[common], help="growth constant of a Floer model")
    s.add_argument("model")
    s.add_argument("--d0", type=int)
    s.set_defaults(func=cmd_asymptotics)

    s = sub.add_parser("catalog", parents=[common], help="catalog utilities")
    csub = s.add_subparsers(dest="catalog_command", required=True)
    v = csub.add_parser("validate", parents=[common], help="load and check every record")
    v.set_defaults(func=cmd_catalog_validate)
    return p


def _text(doc, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(doc, dict):
        lines = []
        for k in sorted(doc):
            v = doc[k]
            if isinstance(v, (dict, list)):
                lines.append(f"{pad}{k}:")
                lines.append(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
        return "\n".join(lines)
    if isinstance(doc, list):
        return "\n".join(f"{pad}-\n{_text(x, indent + 1)}" if isinstance(x, (dict, list)) else f"{pad}- {x}" for x in doc)
    return f"{pad}{doc}"


def _emit(doc, args) -> None:
    fmt = getattr(args, "format", "json")
    text = cat_mod.dumps(doc) if fmt == "json" else _text(doc) + "\n"
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cat = cat_mod.load(args.catalog) if args.catalog else cat_mod.builtin_catalog()
        doc = args.func(cat, args)
    except CheckFailed as exc:
        _emit(exc.report, args)
        return EXIT_MATH
    except MathCheckError as exc:
        _emit({"error": "math_check", "message": str(exc)}, args)
        return EXIT_MATH
    except (ValidationError, OSError) as exc:
        _emit({"error": "validation", "message": str(exc)}, args)
        return EXIT_VALIDATION
    _emit(doc, args)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
