"""Batch front door: generate, analyze, bound-check, and cross-verify.

All commands speak JSON on stdin/stdout (canonical key order, canonical
rational strings, so fixed inputs give byte-identical output); errors go to
stderr with no partial JSON.  Exit codes: 0 success, 2 validation failure,
3 non-simple input, 4 even-dimension-only computation requested in odd
dimension, 1 failed verification.
"""

from __future__ import annotations

import argparse
import json
import sys

from torsig import acceptance
from torsig.chow import monomial_sign_report, signature_via_l_class
from torsig.errors import TorsigError
from torsig.fan import Fan, classify, fan_sigma, is_flag, normal_fan, singularity_index
from torsig.generators import (
    _POLYGON_PRESETS,
    associahedron,
    cube,
    permutohedron,
    polygon,
)
from torsig.invariants import bound_report, h_vector, mirror_euler, sigma
from torsig.polytope import Polytope


def _dump(obj, pretty: bool) -> None:
    if pretty:
        print(json.dumps(obj, sort_keys=True, indent=2))
    else:
        print(json.dumps(obj, sort_keys=True, separators=(",", ":")))


def _fail(message: str, code: int) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def _read_polytope() -> Polytope:
    data = json.load(sys.stdin)
    return Polytope.from_json_dict(data)


def cmd_gen(args) -> int:
    name = args.name
    try:
        if name == "cube":
            poly = cube(args.d if args.d is not None else 3)
        elif name == "permutohedron":
            poly = permutohedron(args.n if args.n is not None else 3)
        elif name == "associahedron":
            poly = associahedron(args.n if args.n is not None else 5)
        elif name in _POLYGON_PRESETS:
            poly = polygon(name)
        else:
            options = ("cube", "permutohedron", "associahedron") + _POLYGON_PRESETS
            return _fail(f"unknown generator {name!r}; options: {options}", 2)
    except (TorsigError, ValueError) as exc:
        return _fail(str(exc), 2)
    _dump(poly.to_json_dict(), args.pretty)
    return 0


def _analysis_report(poly: Polytope, with_chow: bool) -> tuple[dict, int]:
    report = {}
    full = poly
    if poly.intrinsic_dim < poly.ambient_dim:
        full, _ = poly.project_full_dim()
    f = full.f_vector()
    d = full.intrinsic_dim
    report["f"] = list(f)
    report["h"] = list(h_vector(f))
    report["sigma"] = sigma(f)
    report["simple"] = full.is_simple()
    # Angles live in the metric of the presentation the caller supplied.
    report["angle_class"] = poly.angle_class().label
    if not report["simple"]:
        return report, 3
    fan = normal_fan(full)
    cls = classify(fan)
    m = singularity_index(fan)
    report["convexity"] = cls.overall.label
    report["m"] = m
    report["flag"] = is_flag(fan)
    if d % 2 == 0:
        report["bounds"] = bound_report(f, m, cls.overall).to_json_dict()
    if with_chow:
        if d % 2 == 0:
            chow_sigma = signature_via_l_class(fan)
            report["chow_sigma"] = str(chow_sigma)
            report["agreement"] = chow_sigma == report["sigma"]
        else:
            print(
                "warning: --chow skipped, signature expansion needs even dimension",
                file=sys.stderr,
            )
    return report, 0


def cmd_analyze(args) -> int:
    try:
        poly = _read_polytope()
    except (TorsigError, ValueError, KeyError, json.JSONDecodeError) as exc:
        return _fail(f"invalid polytope input: {exc}", 2)
    report, code = _analysis_report(poly, args.chow)
    _dump(report, args.pretty)
    return code


def cmd_bounds(args) -> int:
    try:
        poly = _read_polytope()
    except (TorsigError, ValueError, KeyError, json.JSONDecodeError) as exc:
        return _fail(f"invalid polytope input: {exc}", 2)
    if poly.intrinsic_dim < poly.ambient_dim:
        poly, _ = poly.project_full_dim()
    if poly.intrinsic_dim % 2 != 0:
        return _fail("bounds are defined for even dimension only", 4)
    if not poly.is_simple():
        return _fail("bounds need a simple polytope", 3)
    fan = normal_fan(poly)
    report = bound_report(
        poly.f_vector(),
        singularity_index(fan),
        classify(fan).overall,
        case=args.case,
    )
    _dump(report.to_json_dict(), args.pretty)
    return 0


def cmd_chow_signature(args) -> int:
    try:
        data = json.load(sys.stdin)
        if "rays" in data:
            fan = Fan.from_json_dict(data)
        else:
            poly = Polytope.from_json_dict(data)
            if poly.intrinsic_dim < poly.ambient_dim:
                poly, _ = poly.project_full_dim()
            fan = normal_fan(poly)
    except (TorsigError, ValueError, KeyError, json.JSONDecodeError) as exc:
        return _fail(f"invalid input: {exc}", 2)
    if fan.dim % 2 != 0:
        return _fail("signature expansion needs even dimension", 4)
    try:
        chow_sigma = signature_via_l_class(fan)
    except TorsigError as exc:
        return _fail(str(exc), 2)
    h_sigma = fan_sigma(fan)
    report = {
        "sigma": str(chow_sigma),
        "h_sigma": h_sigma,
        "agreement": chow_sigma == h_sigma,
    }
    if args.terms:
        report["terms"] = [t.to_json_dict() for t in monomial_sign_report(fan)]
    _dump(report, args.pretty)
    return 0


def cmd_mirror(args) -> int:
    try:
        poly = _read_polytope()
    except (TorsigError, ValueError, KeyError, json.JSONDecodeError) as exc:
        return _fail(f"invalid polytope input: {exc}", 2)
    if not poly.is_simple():
        return _fail("mirror construction needs a simple polytope", 3)
    f = poly.f_vector()
    d = poly.intrinsic_dim
    n = poly.n_facets
    report = {"chi": mirror_euler(sigma(f), n, d), "n": n, "d": d}
    _dump(report, args.pretty)
    return 0


def cmd_corpus_verify(args) -> int:
    results = acceptance.run_all(slow=args.slow)
    width = max(len(r.cid) for r in results)
    all_ok = True
    for r in results:
        mark = "PASS" if r.passed else "FAIL"
        print(f"{r.cid:<{width}}  {mark}  {r.title}")
        if not r.passed or args.verbose:
            for line in r.details:
                print(f"{'':<{width}}    {line}")
        all_ok = all_ok and r.passed
    print("result:", "all criteria passed" if all_ok else "FAILURES above")
    return 0 if all_ok else 1


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="torsig",
        description="exact signature and convexity toolkit for simple rational polytopes",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="emit a generated polytope as JSON")
    p.add_argument("name")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("analyze", help="full invariant report for a polytope on stdin")
    p.add_argument("--chow", action="store_true",
                   help="also verify sigma via toric intersection numbers")
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("bounds", help="lower-bound report for a polytope on stdin")
    p.add_argument("--case", choices=("i", "ii", "iii"), default=None)
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("chow-signature",
                       help="signature via intersection numbers, polytope or fan on stdin")
    p.add_argument("--terms", action="store_true",
                   help="include every monomial term with its sign check")
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=cmd_chow_signature)

    p = sub.add_parser("mirror", help="Euler characteristic of the mirrored manifold")
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=cmd_mirror)

    p = sub.add_parser("corpus-verify", help="run the acceptance suite")
    p.add_argument("--slow", action="store_true",
                   help="include the optional large cases")
    p.add_argument("--verbose", action="store_true")
    p.set_defaults(func=cmd_corpus_verify)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
