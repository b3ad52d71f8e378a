"""Command-line surface: JSON payloads in, schema-versioned JSON reports out.

Exit codes: 0 success, 1 mathematical precondition failure (with diagnostic),
2 malformed input.  Reports are byte-deterministic for identical inputs.
"""

from __future__ import annotations

import argparse
import json
import random
import sys as _sys

from .arrangement import Arrangement, isolating_direction, minimal_cells
from .classify import classify, classify_balanced7, essential_cayley
from .configs import (
    NumberFieldContext,
    NumericContext,
    PlanarConfig,
    PreconditionError,
    RationalContext,
    cocircuits,
    profile,
    validate,
)
from .exact import IntMatrix, NumberField, column_hnf, kernel_basis, parse_rational
from .operators import annihilation_check, stability_check
from .residues import (
    CAYLEY_VARS,
    CayleySystem,
    euler_jacobi_test,
    f2_fixtures,
    numeric_residue_oracle,
    series_for_degree,
)

SCHEMA_VERSION = 1

_FIXTURE_DEGREES = {
    "R12": (-1, -1, -1, 0, 0),
    "R1": (-1, -1, -1, 0, 0),
    "R2": (-1, -1, -1, 0, 0),
    "R3": (-1, -1, -1, 0, 0),
    "R_112_11": (-1, -1, -2, -1, -1),
}


class InputError(ValueError):
    """Malformed payload or flags (exit code 2)."""


def _parse_scalar_entry(value, context):
    if isinstance(context, NumberFieldContext):
        if isinstance(value, dict):
            return context.field.element([parse_rational(c) for c in value["coeffs"]])
        return context.field.from_rational(parse_rational(value))
    if isinstance(context, NumericContext):
        return float(value)
    q = parse_rational(value)
    return q.numerator if q.denominator == 1 else q


def _load_payload(path: str | None) -> dict:
    try:
        raw = open(path, "rb").read() if path else _sys.stdin.buffer.read()
    except OSError as e:
        raise InputError(f"cannot read payload: {e}") from e
    try:
        payload = json.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as e:
        raise InputError(f"malformed JSON payload: {e}") from e
    if not isinstance(payload, dict):
        raise InputError("payload must be a JSON object")
    return payload


def _context_from_payload(payload: dict):
    spec = payload.get("scalar", {"kind": "rational"})
    if not isinstance(spec, dict) or "kind" not in spec:
        raise InputError("scalar: expected an object with a 'kind' field")
    kind = spec["kind"]
    if kind == "rational":
        return RationalContext()
    if kind == "number_field":
        if "minpoly" not in spec:
            raise InputError("scalar.minpoly: required for number_field contexts")
        return NumberFieldContext(NumberField(spec["minpoly"]))
    if kind == "numeric":
        return NumericContext()
    raise InputError(f"scalar.kind: unknown kind {kind!r}")


def _matrix_from_payload(payload: dict) -> IntMatrix | None:
    if "matrix_A" not in payload:
        return None
    rows = payload["matrix_A"]
    try:
        return IntMatrix(rows)
    except (TypeError, ValueError) as e:
        raise InputError(f"matrix_A: {e}") from e


def _config_from_payload(payload: dict) -> tuple[PlanarConfig, IntMatrix | None]:
    A = _matrix_from_payload(payload)
    if "gale_B" in payload:
        context = _context_from_payload(payload)
        rows = payload["gale_B"]
        if not isinstance(rows, list) or not all(
            isinstance(r, list) and len(r) == 2 for r in rows
        ):
            raise InputError("gale_B: expected a list of [x, y] pairs")
        try:
            vecs = [
                (_parse_scalar_entry(r[0], context), _parse_scalar_entry(r[1], context))
                for r in rows
            ]
        except (KeyError, TypeError, ValueError) as e:
            raise InputError(f"gale_B entries: {e}") from e
        B = PlanarConfig(vecs, context)
        if A is not None:
            if A.cols != B.n:
                raise InputError("matrix_A and gale_B disagree on n")
            if context.kind == "rational":
                K = IntMatrix([[int(x), int(y)] for x, y in B.vectors])
                if not A.mul(K).is_zero():
                    raise InputError("matrix_A * gale_B is not zero")
        return B, A
    if A is None:
        raise InputError("payload needs matrix_A or gale_B")
    K = kernel_basis(A)
    if K.cols != 2:
        raise PreconditionError(
            f"kernel of matrix_A has rank {K.cols}, need 2 for a planar dual"
        )
    return PlanarConfig.from_matrix(K), A


def _int_list(text: str, count: int | None = None, flag: str = "") -> tuple[int, ...]:
    try:
        vals = tuple(int(x) for x in text.split(","))
    except ValueError as e:
        raise InputError(f"{flag}: expected comma-separated integers") from e
    if count is not None and len(vals) != count:
        raise InputError(f"{flag}: expected {count} integers")
    return vals


def _system_from_args(args, payload: dict | None) -> CayleySystem:
    if args.gamma:
        return CayleySystem(
            _int_list(args.gamma, 2, "--gamma"),
            _int_list(args.alpha, 2, "--alpha"),
            _int_list(args.beta, 2, "--beta"),
        )
    if payload is not None and "matrix_A" in payload:
        A = _matrix_from_payload(payload)
        structure, reason = essential_cayley(A)
        if structure is None:
            raise PreconditionError(f"matrix_A is not essential Cayley: {reason}")
        return CayleySystem.from_structure(structure)
    raise InputError("provide --gamma/--alpha/--beta or a matrix_A payload")


# ---------------------------------------------------------------------------
# command handlers
# ---------------------------------------------------------------------------


def _cmd_validate(args):
    B, A = _config_from_payload(_load_payload(args.input))
    return validate(B, A).to_json()


def _cmd_gale(args):
    payload = _load_payload(args.input)
    A = _matrix_from_payload(payload)
    if A is None:
        raise InputError("gale requires matrix_A")
    K = kernel_basis(A)
    return {
        "kernel_basis": K.to_lists(),
        "column_hnf": column_hnf(K).to_lists() if K.cols else [],
        "codimension": K.cols,
    }


def _cmd_classify(args):
    B, A = _config_from_payload(_load_payload(args.input))
    if args.balanced:
        result = classify_balanced7(B)
    else:
        report = validate(B, A)
        if not report.ok:
            raise PreconditionError(
                "validation failed: " + ", ".join(f"{f} failed" for f in report.failures())
            )
        result = classify(B)
    return result.to_json()


def _cmd_profile(args):
    B, _ = _config_from_payload(_load_payload(args.input))
    return profile(B).to_json()


def _cmd_cayley(args):
    payload = _load_payload(args.input)
    A = _matrix_from_payload(payload)
    if A is None:
        raise InputError("cayley requires matrix_A")
    structure, reason = essential_cayley(A)
    if structure is None:
        return {"essential_cayley": None, "reason": reason}
    return {"essential_cayley": structure.to_json()}


def _cmd_residue(args):
    payload = _load_payload(args.input) if args.input else None
    system = _system_from_args(args, payload)
    c = _int_list(args.c, 3, "--c")
    a = _int_list(args.a, 2, "--a")
    result = series_for_degree(system, c, a, args.order)
    out = result.to_json()
    if args.oracle_check:
        if c != (1, 1, 1):
            raise PreconditionError("the numeric oracle is restricted to c = (1,1,1)")
        rng = random.Random(args.seed)
        errors = []
        for _ in range(args.oracle_check):
            params = [
                rng.uniform(0.6, 1.4) * complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
                for _ in range(7)
            ]
            params[4] = 8.0 + rng.uniform(0, 2)  # keep x3 large: series converges
            oracle = numeric_residue_oracle(system, a, "12", params)
            approx = complex(result.series.poly.evaluate(params))
            errors.append(abs(oracle - approx) / max(abs(oracle), 1e-12))
        out["oracle_check"] = {
            "points": args.oracle_check,
            "max_relative_error": max(errors),
        }
    return out


def _fixture(args):
    fx = f2_fixtures()
    if args.fixture not in fx:
        raise InputError(f"unknown fixture {args.fixture!r}; have {sorted(fx)}")
    return fx[args.fixture]


def _cmd_annihilate(args):
    f = _fixture(args)
    alpha = (
        _int_list(args.degree, 5, "--degree")
        if args.degree
        else _FIXTURE_DEGREES[args.fixture]
    )
    A = CayleySystem.f2().matrix()
    report = annihilation_check(A, alpha, f, bound=args.bound, variables=CAYLEY_VARS)
    return {"fixture": args.fixture, "alpha": list(alpha), **report.to_json()}


def _cmd_stability(args):
    f = _fixture(args)
    report = stability_check(f, bound=args.bound)
    return {"fixture": args.fixture, **report.to_json()}


def _cmd_arrangement(args):
    payload = _load_payload(args.input)
    B, A = _config_from_payload(payload)
    if B.context.kind != "rational":
        raise PreconditionError("arrangements require integer Gale duals")
    rows = []
    for x, y in B.vectors:
        if int(x) != x or int(y) != y:
            raise PreconditionError("arrangements require integer Gale duals")
        rows.append([int(x), int(y)])
    v = _int_list(args.v, len(rows), "--v")
    arr = Arrangement.from_gale(IntMatrix(rows), v, A)
    cells = minimal_cells(arr, box=args.box)
    iso = isolating_direction(arr, cells)
    out = cells.to_json()
    out["degree"] = list(arr.degree()) if arr.degree() is not None else None
    out["isolating_direction"] = (
        {"w": list(iso[0]), "support": list(iso[1].support)} if iso else None
    )
    return out


def _cmd_ej_test(args):
    payload = _load_payload(args.input) if args.input else None
    system = _system_from_args(args, payload)
    c = _int_list(args.c, 3, "--c")
    a = _int_list(args.a, 2, "--a")
    return {"c": list(c), "a": list(a), "in_cone": euler_jacobi_test(system, c, a)}


def _cmd_fixtures(args):
    return {name: f.to_json() for name, f in sorted(f2_fixtures().items())}


# ---------------------------------------------------------------------------
# parser / dispatch
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="galeres",
        description="Gale-duality classification and toric residue series "
        "for planar configurations",
    )
    parser.add_argument("--output", choices=("json", "pretty"), default="json")
    parser.add_argument("--seed", type=int, default=0, help="seed for sampling paths")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(handler=handler)
        return p

    p = add("validate", _cmd_validate, help="nonconfluence and assumption checks")
    p.add_argument("--input", help="JSON payload path (default: stdin)")

    p = add("gale", _cmd_gale, help="saturated kernel lattice basis of matrix_A")
    p.add_argument("--input")

    p = add("classify", _cmd_classify, help="classification of the planar dual")
    p.add_argument("--input")
    p.add_argument("--balanced", action="store_true", help="use the balanced (i-v) classification")

    p = add("profile", _cmd_profile, help="uniform/balanced/irreducible report")
    p.add_argument("--input")

    p = add("cayley", _cmd_cayley, help="essential-Cayley detection for 5x7 matrices")
    p.add_argument("--input")

    p = add("residue", _cmd_residue, help="exact toric residue series")
    p.add_argument("--input")
    p.add_argument("--gamma", help="g1,g2")
    p.add_argument("--alpha", help="a1,a2")
    p.add_argument("--beta", help="b1,b2")
    p.add_argument("--c", default="1,1,1")
    p.add_argument("--a", default="0,0")
    p.add_argument("--order", type=int, default=6)
    p.add_argument("--oracle-check", type=int, default=0, metavar="N",
                   help="compare against the numeric oracle at N random points")

    p = add("annihilate", _cmd_annihilate, help="bounded annihilation check on a fixture")
    p.add_argument("--fixture", required=True)
    p.add_argument("--bound", type=int, default=3)
    p.add_argument("--degree", help="five comma-separated integers (default: the fixture's)")

    p = add("stability", _cmd_stability, help="iterated-derivative stability search")
    p.add_argument("--fixture", required=True)
    p.add_argument("--bound", type=int, default=6)

    p = add("arrangement", _cmd_arrangement, help="minimal cells of the degree arrangement")
    p.add_argument("--input")
    p.add_argument("--v", required=True, help="lattice point of the degree fiber")
    p.add_argument("--box", type=int, default=12)

    p = add("ej-test", _cmd_ej_test, help="Euler-Jacobi cone membership")
    p.add_argument("--input")
    p.add_argument("--gamma")
    p.add_argument("--alpha")
    p.add_argument("--beta")
    p.add_argument("--c", required=True)
    p.add_argument("--a", required=True)

    add("fixtures", _cmd_fixtures, help="closed-form F2 fixtures as JSON")
    return parser


def _emit(report: dict, mode: str) -> str:
    if mode == "pretty":
        return json.dumps(report, indent=2, sort_keys=True)
    return json.dumps(report, sort_keys=True, separators=(",", ":"))


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    report = {"schema_version": SCHEMA_VERSION, "command": args.command}
    try:
        report["result"] = args.handler(args)
    except InputError as e:
        report["error"] = {"kind": "input", "message": str(e)}
        print(_emit(report, args.output))
        return 2
    except PreconditionError as e:
        report["error"] = {"kind": "precondition", "message": str(e)}
        print(_emit(report, args.output))
        return 1
    print(_emit(report, args.output))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
