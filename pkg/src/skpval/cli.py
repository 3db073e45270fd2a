"""skpval command line: parse a JSON problem file, dispatch, emit a report.

Exit codes: 0 success, 1 domain validation failure, 2 malformed input.
Reports are byte-deterministic for identical inputs and tool version.
"""

import argparse
import hashlib
import json
import os
import sys

from . import __version__
from .classify import abhyankar_check, classify_table1
from .errors import (
    HypothesisViolatedError,
    InvalidTableError,
    SchemaError,
    SkpvalError,
    VerificationFailedError,
)
from . import jsonio
from .poly import parse_poly
from .realize import realize, verify_realization
from .skp import minimal_pseudo_skp
from .valuation import (
    SkpValuation,
    delta_of,
    graded_normal_form,
    initial_form,
    value_report,
)
from .valtable import validate_table


def _digest(raw):
    return "sha256:" + hashlib.sha256(raw).hexdigest()


def _read_problem(path):
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from exc
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise SchemaError(f"{path}: top level must be an object")
    return data, _digest(raw)


def _value_payload(value):
    payload = {"value": [str(c) for c in value.coords]}
    payload["value_str"] = (
        str(value.coords[0])
        if value.dim == 1
        else "(" + ", ".join(str(c) for c in value.coords) + ")"
    )
    return payload


def _load_valuation(args):
    data, digest = _read_problem(args.skp)
    skp = jsonio.build_from_problem(data)
    alpha = jsonio.load_alpha(getattr(args, "alpha", None), skp)
    return SkpValuation(skp, alpha), digest


def cmd_validate(args):
    data, digest = _read_problem(args.file)
    table = jsonio.load_table(data.get("values", data))
    report = validate_table(table)
    status = 0 if report.is_sequence_of_values else 1
    return status, digest, {"validation": report.to_json()}


def cmd_build(args):
    data, digest = _read_problem(args.file)
    skp = jsonio.build_from_problem(data)
    result = {"skp": jsonio.dump_skp(skp)}
    if args.minimal:
        result["minimal_pseudo"] = jsonio.dump_skp(minimal_pseudo_skp(skp))
    return 0, digest, result


def cmd_expand(args):
    from .expansion import adic_expand

    data, digest = _read_problem(args.file)
    skp = jsonio.build_from_problem(data)
    alpha = jsonio.load_alpha(args.alpha, skp)
    f = parse_poly(args.poly, skp.nvars, skp.field)
    expansion = adic_expand(f, skp, alpha)
    return 0, digest, {"expansion": expansion.to_json()}


def cmd_eval(args):
    valuation, digest = _load_valuation(args)
    f = parse_poly(args.poly, valuation.skp.nvars, valuation.skp.field)
    value, trunc_ok = value_report(f, valuation)
    payload = _value_payload(value)
    if trunc_ok is not None:
        payload["truncation_valid"] = trunc_ok
    return 0, digest, payload


def cmd_initial(args):
    valuation, digest = _load_valuation(args)
    f = parse_poly(args.poly, valuation.skp.nvars, valuation.skp.field)
    form = initial_form(f, valuation)
    return 0, digest, {"initial_form": form.to_json()}


def cmd_delta(args):
    data, digest = _read_problem(args.skp)
    skp = jsonio.build_from_problem(data)
    f = parse_poly(args.poly, skp.nvars, skp.field)
    return 0, digest, {"delta": delta_of(f, skp, args.j)}


def cmd_normal_form(args):
    valuation, digest = _load_valuation(args)
    f = parse_poly(args.poly, valuation.skp.nvars, valuation.skp.field)
    nf = graded_normal_form(f, valuation)
    return 0, digest, {"normal_form": nf.to_json(valuation.skp.field)}


def cmd_classify(args):
    data, digest = _read_problem(args.file)
    if "arithmetic" in data:
        arith = jsonio.load_arithmetic(data["arithmetic"])
        report = classify_table1(arith)
        payload = report.to_json()
        payload["abhyankar"] = (
            abhyankar_check(report, 3) if report.status != "UNCLASSIFIED" else None
        )
        return 0, digest, {"classification": payload}
    from .classify import inductive_invariants

    skp = jsonio.build_from_problem(data)
    declared = data.get("declared_infinite_rows") or ()
    report = inductive_invariants(skp, declared)
    payload = report.to_json()
    payload["abhyankar"] = abhyankar_check(report, skp.nvars)
    return 0, digest, {"invariants": payload}


def cmd_realize(args, force_verify=False):
    data, digest = _read_problem(args.file)
    spec = jsonio.load_semigroup_spec(data)
    mode = args.mode or data.get("mode", "corrected")
    thetas = jsonio.load_thetas_for_realize(data, spec.field)
    result = realize(spec, mode, thetas)
    payload = {
        "mode": mode,
        "blocks": result.blocks.to_json(),
        "analysis": result.analysis.to_json(),
        "table": jsonio.dump_table(result.table),
        "report": result.report,
    }
    if force_verify or args.verify:
        verdict = verify_realization(
            result.valuation,
            spec,
            result.blocks,
            coeff_bound=args.coeff_bound,
            degree_bound=args.degree_bound,
            samples=args.samples,
            seed=args.seed,
        )
        payload["verification"] = verdict.to_json()
    return 0, digest, {"realization": payload}


def cmd_verify(args):
    return cmd_realize(args, force_verify=True)


def _add_poly_commands(sub):
    for name, fn, extra in (
        ("eval", cmd_eval, ()),
        ("initial", cmd_initial, ()),
        ("delta", cmd_delta, ("j",)),
        ("normal-form", cmd_normal_form, ()),
    ):
        p = sub.add_parser(name, help=f"{name} of a polynomial under the table valuation")
        p.add_argument("--skp", required=True, help="skp problem file")
        p.add_argument("--poly", required=True, help="polynomial text, e.g. \"X1^2-X0^3\"")
        if "j" in extra:
            p.add_argument("--j", type=int, required=True, help="top-row cutoff")
        else:
            p.add_argument("--alpha", help="acceptable vector, e.g. \"1,3\"")
        p.set_defaults(func=fn)


def make_parser():
    parser = argparse.ArgumentParser(
        prog="skpval",
        description="Key-polynomial valuations, expansions, classification, "
        "and semigroup realization with exact arithmetic.",
    )
    parser.add_argument("--out", help="write the JSON report here instead of stdout")
    parser.add_argument(
        "--seed", type=int, default=0, help="seed for randomized sweeps (printed)"
    )
    parser.add_argument(
        "--jobs",
        type=int,
        default=int(os.environ.get("SKPVAL_JOBS", "1")),
        help="worker cap for batch sweeps (recorded; sweeps run serially at "
        "desk scale)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate a value table")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("build", help="build the key polynomials")
    p.add_argument("file")
    p.add_argument("--minimal", action="store_true", help="also emit the minimal pseudo table")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("expand", help="adic expansion of a polynomial")
    p.add_argument("file")
    p.add_argument("--poly", required=True)
    p.add_argument("--alpha")
    p.set_defaults(func=cmd_expand)

    _add_poly_commands(sub)

    p = sub.add_parser("classify", help="numerical invariants / lookup table")
    p.add_argument("file")
    p.set_defaults(func=cmd_classify)

    for name, fn in (("realize", cmd_realize), ("verify", cmd_verify)):
        p = sub.add_parser(name, help=f"{name} a semigroup from its generators")
        p.add_argument("file")
        p.add_argument("--mode", choices=("literal", "corrected"))
        p.add_argument("--verify", action="store_true")
        p.add_argument("--coeff-bound", type=int, dest="coeff_bound")
        p.add_argument("--degree-bound", type=int, dest="degree_bound")
        p.add_argument("--samples", type=int)
        p.set_defaults(func=fn)
    return parser


def run_command(argv):
    parser = make_parser()
    args = parser.parse_args(argv)
    report = {
        "tool": "skpval",
        "version": __version__,
        "command": args.command,
        "seed": args.seed,
        "jobs": args.jobs,
        "diagnostics": [],
    }
    try:
        code, digest, result = args.func(args)
        report["input_digest"] = digest
        report["result"] = result
        report["status"] = "ok" if code == 0 else "invalid"
    except SchemaError as exc:
        report["status"] = "error"
        report["diagnostics"].append({"kind": "schema", "message": str(exc)})
        code = 2
    except (InvalidTableError, VerificationFailedError, HypothesisViolatedError) as exc:
        report["status"] = "invalid"
        kind = type(exc).__name__.removesuffix("Error")
        report["diagnostics"].append({"kind": kind, "message": str(exc)})
        if isinstance(exc, InvalidTableError) and exc.report is not None:
            report["diagnostics"][-1]["validation"] = exc.report.to_json()
        code = 1
    except SkpvalError as exc:
        report["status"] = "invalid"
        report["diagnostics"].append(
            {"kind": type(exc).__name__.removesuffix("Error"), "message": str(exc)}
        )
        code = 1
    except ValueError as exc:
        # bad argument values (cutoff vectors, positions) count as malformed input
        report["status"] = "error"
        report["diagnostics"].append({"kind": "value", "message": str(exc)})
        code = 2
    except Exception as exc:  # never crash: surface as a diagnostic
        report["status"] = "error"
        report["diagnostics"].append(
            {"kind": "internal", "message": f"{type(exc).__name__}: {exc}"}
        )
        code = 1
    text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


def main(argv=None):
    return run_command(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
