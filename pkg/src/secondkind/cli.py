"""Command-line front end.

Subcommands: ``spectrum``, ``classify``, ``threshold``, ``examples``,
``verify``, ``oracle``. All reports are JSON on stdout with floats printed
to 17 significant digits so outputs are byte-stable and round-trip exact.

Exit codes: 0 success, 1 verification mismatch or counterexample, 2 usage or
parse error, 3 numeric failure.
"""

import argparse
import json
import sys
import time

from .curvature import einstein_constant, scalar
from .descriptors import (
    DescriptorError,
    build_tensor,
    closed_form_clusters,
    descriptor_to_obj,
    parse_descriptor,
)
from .errors import ConvergenceError, InvalidInputError
from .operator2k import (
    alpha_sum,
    bruteforce_min_alpha_sum,
    negate_spectrum,
    nonneg_threshold,
    nonpos_threshold,
    spectrum,
)
from .rigidity import (
    HARNESS_CASES,
    a_const,
    b_const,
    check_rigidity,
    verify_product_structure,
)
from .sym2 import sym2_dim

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_NUMERIC = 3

EXAMPLES_KAPPA_GRID = (0.5, 1.0, 2.0)
EXAMPLES_REAL_DIMS = (2, 3, 4)
EXAMPLES_COMPLEX_DIMS = (1, 2, 3)
EXAMPLES_EUCLIDEAN_DIMS = (1, 2)
EXAMPLES_VALUE_TOL = 1e-9


def _format_float(x):
    if x != x or x in (float("inf"), float("-inf")):
        raise ValueError(f"cannot serialize non-finite float {x!r}")
    return format(x, ".17g")


def dumps_json(obj, indent=2):
    """Serialize to JSON with floats at 17 significant digits."""
    out = []
    _emit(obj, out, indent, 0)
    return "".join(out)


def _emit(obj, out, indent, level):
    pad = " " * (indent * (level + 1))
    close_pad = " " * (indent * level)
    if obj is None:
        out.append("null")
    elif obj is True:
        out.append("true")
    elif obj is False:
        out.append("false")
    elif isinstance(obj, float):
        out.append(_format_float(obj))
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{\n")
        for i, (key, value) in enumerate(obj.items()):
            out.append(f"{pad}{json.dumps(str(key))}: ")
            _emit(value, out, indent, level + 1)
            out.append(",\n" if i < len(obj) - 1 else "\n")
        out.append(close_pad + "}")
    elif isinstance(obj, (list, tuple)):
        if not obj:
            out.append("[]")
            return
        out.append("[\n")
        for i, value in enumerate(obj):
            out.append(pad)
            _emit(value, out, indent, level + 1)
            out.append(",\n" if i < len(obj) - 1 else "\n")
        out.append(close_pad + "]")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def _clusters_obj(clusters):
    return [{"value": float(v), "multiplicity": int(m)} for v, m in clusters]


def _load_descriptor(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise DescriptorError(f"cannot read descriptor file {path!r}: {exc}") from exc
    return parse_descriptor(text)


def _resolve_alpha(token, desc, n):
    if token == "line":
        if n < 2:
            raise DescriptorError("symbolic alpha 'line' needs total dimension >= 2")
        return a_const(n - 1, 1)
    if token in ("A", "B"):
        if desc.kind != "product" or len(desc.factors) != 2:
            raise DescriptorError(
                f"symbolic alpha {token!r} needs a product descriptor with exactly two factors"
            )
        f1, f2 = desc.factors
        if token == "A":
            return a_const(f1.dim, f2.dim)
        complex_kinds = ("cp", "ch", "complex_euclidean")
        if f1.kind not in complex_kinds or f2.kind not in complex_kinds:
            raise DescriptorError("symbolic alpha 'B' needs two complex factors")
        return b_const(f1.m, f2.m)
    try:
        return float(token)
    except ValueError as exc:
        raise DescriptorError(
            f"alpha must be a number or one of 'A', 'B', 'line', got {token!r}"
        ) from exc


def _base_report(desc, tensor):
    started = time.perf_counter()
    s = spectrum(tensor)
    report = {
        "input": descriptor_to_obj(desc),
        "n": tensor.dim,
        "N": s.N,
        "scalar_curvature": scalar(tensor),
        "einstein_constant": einstein_constant(tensor),
        "spectrum": _clusters_obj(s.clusters),
        "thresholds": {
            "nonneg": nonneg_threshold(s),
            "nonpos": nonpos_threshold(s),
        },
        "classifications": [],
        "closed_form": None,
    }
    closed = closed_form_clusters(desc)
    if closed is not None:
        report["closed_form"] = _clusters_obj(closed)
    return report, s, started


def _finish(report, started):
    report["timing"] = {"seconds": time.perf_counter() - started}
    return report


def _cmd_spectrum(args):
    desc = _load_descriptor(args.file)
    report, _, started = _base_report(desc, build_tensor(desc))
    print(dumps_json(_finish(report, started)))
    return EXIT_OK


def _cmd_classify(args):
    desc = _load_descriptor(args.file)
    tensor = build_tensor(desc)
    report, s, started = _base_report(desc, tensor)
    neg = negate_spectrum(s)
    for token in args.alpha:
        alpha = _resolve_alpha(token, desc, tensor.dim)
        nonneg = alpha_sum(s, alpha) >= -args.tol
        nonpos = alpha_sum(neg, alpha) >= -args.tol
        verdict = ("both" if nonneg and nonpos else "nonnegative" if nonneg
                   else "nonpositive" if nonpos else "neither")
        report["classifications"].append(
            {"requested": token, "alpha": alpha, "verdict": verdict}
        )
    print(dumps_json(_finish(report, started)))
    return EXIT_OK


def _cmd_threshold(args):
    desc = _load_descriptor(args.file)
    tensor = build_tensor(desc)
    started = time.perf_counter()
    s = spectrum(tensor)
    report = {
        "input": descriptor_to_obj(desc),
        "n": tensor.dim,
        "N": s.N,
        "thresholds": {
            "nonneg": nonneg_threshold(s),
            "nonpos": nonpos_threshold(s),
        },
    }
    print(dumps_json(_finish(report, started)))
    return EXIT_OK


def _desc_obj(kind, **fields):
    obj = {"kind": kind}
    obj.update(fields)
    return obj


def _product_obj(*factors):
    return {"kind": "product", "factors": list(factors)}


def _example_families():
    """The thirteen model families with their parameter grids."""
    kappas = EXAMPLES_KAPPA_GRID
    dims = EXAMPLES_REAL_DIMS
    ms = EXAMPLES_COMPLEX_DIMS
    eu = EXAMPLES_EUCLIDEAN_DIMS

    def pairs_leq(values):
        return [(a, b) for a in values for b in values if a <= b]

    def pairs_all(values):
        return [(a, b) for a in values for b in values]

    families = []
    families.append(("space-forms", [
        _desc_obj(kind, dim=n, kappa=k)
        for kind in ("sphere", "hyperbolic") for n in dims for k in kappas
    ]))
    families.append(("complex-space-forms", [
        _desc_obj(kind, m=m, kappa=k)
        for kind in ("cp", "ch") for m in ms for k in kappas
    ]))
    families.append(("sphere-x-sphere", [
        _product_obj(_desc_obj("sphere", dim=n1, kappa=k1), _desc_obj("sphere", dim=n2, kappa=k2))
        for n1, n2 in pairs_leq(dims) for k1 in kappas for k2 in kappas
    ]))
    families.append(("hyperbolic-x-hyperbolic", [
        _product_obj(_desc_obj("hyperbolic", dim=n1, kappa=k1),
                     _desc_obj("hyperbolic", dim=n2, kappa=k2))
        for n1, n2 in pairs_leq(dims) for k1 in kappas for k2 in kappas
    ]))
    families.append(("sphere-x-euclidean", [
        _product_obj(_desc_obj("sphere", dim=n1, kappa=k1), _desc_obj("euclidean", dim=n2))
        for n1 in dims for n2 in eu for k1 in kappas
    ]))
    families.append(("hyperbolic-x-euclidean", [
        _product_obj(_desc_obj("hyperbolic", dim=n1, kappa=k1), _desc_obj("euclidean", dim=n2))
        for n1 in dims for n2 in eu for k1 in kappas
    ]))
    families.append(("sphere-x-hyperbolic", [
        _product_obj(_desc_obj("sphere", dim=n1, kappa=k1),
                     _desc_obj("hyperbolic", dim=n2, kappa=k2))
        for n1, n2 in pairs_all(dims) for k1 in kappas for k2 in kappas
    ]))
    families.append(("cp-x-cp", [
        _product_obj(_desc_obj("cp", m=m1, kappa=k1), _desc_obj("cp", m=m2, kappa=k2))
        for m1, m2 in pairs_leq(ms) for k1 in kappas for k2 in kappas
    ]))
    families.append(("ch-x-ch", [
        _product_obj(_desc_obj("ch", m=m1, kappa=k1), _desc_obj("ch", m=m2, kappa=k2))
        for m1, m2 in pairs_leq(ms) for k1 in kappas for k2 in kappas
    ]))
    families.append(("cp-x-complex-euclidean", [
        _product_obj(_desc_obj("cp", m=m1, kappa=k1), _desc_obj("complex_euclidean", m=m2))
        for m1 in ms for m2 in eu for k1 in kappas
    ]))
    families.append(("ch-x-complex-euclidean", [
        _product_obj(_desc_obj("ch", m=m1, kappa=k1), _desc_obj("complex_euclidean", m=m2))
        for m1 in ms for m2 in eu for k1 in kappas
    ]))
    families.append(("cp-x-ch", [
        _product_obj(_desc_obj("cp", m=m1, kappa=k1), _desc_obj("ch", m=m2, kappa=k2))
        for m1, m2 in pairs_all(ms) for k1 in kappas for k2 in kappas
    ]))
    families.append(("euclidean-flat", [
        _desc_obj("euclidean", dim=n) for n in dims
    ]))
    return families


def _compare_clusters(expected, computed, value_tol):
    if len(expected) != len(computed):
        return False, float("inf")
    max_err = 0.0
    for (ev, em), (cv, cm) in zip(expected, computed):
        if em != cm:
            return False, float("inf")
        max_err = max(max_err, abs(ev - cv))
    return max_err <= value_tol, max_err


def _cmd_examples(args):
    started = time.perf_counter()
    families_out = []
    all_match = True
    for name, case_objs in _example_families():
        cases = []
        family_match = True
        for obj in case_objs:
            desc = parse_descriptor(json.dumps(obj))
            expected = closed_form_clusters(desc)
            computed = list(spectrum(build_tensor(desc)).clusters)
            match, max_err = _compare_clusters(expected, computed, EXAMPLES_VALUE_TOL)
            family_match = family_match and match
            cases.append({
                "descriptor": obj,
                "expected": _clusters_obj(expected),
                "computed": _clusters_obj(computed),
                "max_value_error": max_err if max_err != float("inf") else None,
                "match": match,
            })
        all_match = all_match and family_match
        families_out.append({
            "family": name,
            "cases_run": len(cases),
            "all_match": family_match,
            "cases": cases,
        })
    out = {
        "families": families_out,
        "family_count": len(families_out),
        "all_match": all_match,
        "timing": {"seconds": time.perf_counter() - started},
    }
    print(dumps_json(out))
    return EXIT_OK if all_match else EXIT_MISMATCH


def _cmd_verify(args):
    if args.harness == "product":
        if not args.file1 or not args.file2:
            raise DescriptorError("the product harness needs --file1 and --file2")
        r1 = build_tensor(_load_descriptor(args.file1))
        r2 = build_tensor(_load_descriptor(args.file2))
        report = verify_product_structure(r1, r2, tol=args.tol)
    else:
        params = {}
        for key in ("n", "n1", "n2", "m1", "m2"):
            value = getattr(args, key)
            if value is not None:
                params[key] = value
        if args.kappa_grid:
            try:
                params["grid"] = [float(t) for t in args.kappa_grid.split(",")]
            except ValueError as exc:
                raise DescriptorError(
                    f"--kappa-grid must be comma-separated numbers: {exc}"
                ) from exc
        report = check_rigidity(args.harness, params, seed=args.seed,
                                samples=args.samples, tol=args.tol)
    print(dumps_json(report.to_dict()))
    return EXIT_OK if report.verdict != "violated" else EXIT_MISMATCH


def _cmd_oracle(args):
    desc = _load_descriptor(args.file)
    tensor = build_tensor(desc)
    started = time.perf_counter()
    s = spectrum(tensor)
    alpha = _resolve_alpha(args.alpha, desc, tensor.dim)
    expected = alpha_sum(s, alpha)
    result = bruteforce_min_alpha_sum(tensor, alpha, args.samples, args.seed)
    eigenbasis_value = result.sample_values[0]
    eigen_ok = abs(eigenbasis_value - expected) <= 1e-9
    floor_ok = all(v >= expected - 1e-8 for v in result.sample_values)
    report = {
        "input": descriptor_to_obj(desc),
        "alpha": alpha,
        "alpha_sum": expected,
        "oracle_min": result.min_value,
        "eigenbasis_value": eigenbasis_value,
        "argmin_sample": result.argmin_sample,
        "argmin_digest": result.argmin_digest,
        "samples": args.samples,
        "min_sample_value": min(result.sample_values),
        "max_sample_value": max(result.sample_values),
        "consistent": eigen_ok and floor_ok,
        "timing": {"seconds": time.perf_counter() - started},
    }
    print(dumps_json(report))
    return EXIT_OK if report["consistent"] else EXIT_MISMATCH


def build_parser():
    parser = argparse.ArgumentParser(
        prog="secondkind",
        description="Spectra and fractional nonnegativity thresholds of the "
                    "curvature operator on traceless symmetric two-tensors.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="spectrum, thresholds, and invariants of a descriptor")
    p.add_argument("file", help="descriptor JSON file")
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("classify", help="spectrum report plus verdicts at requested alphas")
    p.add_argument("file", help="descriptor JSON file")
    p.add_argument("--alpha", action="append", required=True,
                   help="numeric alpha or one of 'A', 'B', 'line' (repeatable)")
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("threshold", help="nonnegativity/nonpositivity thresholds only")
    p.add_argument("file", help="descriptor JSON file")
    p.set_defaults(func=_cmd_threshold)

    p = sub.add_parser("examples",
                       help="evaluate the thirteen model families against closed forms")
    p.set_defaults(func=_cmd_examples)

    p = sub.add_parser("verify", help="run a verification harness")
    p.add_argument("harness", choices=list(HARNESS_CASES) + ["product"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--n", type=int, default=None, help="total dimension (line harness)")
    p.add_argument("--n1", type=int, default=None)
    p.add_argument("--n2", type=int, default=None)
    p.add_argument("--m1", type=int, default=None)
    p.add_argument("--m2", type=int, default=None)
    p.add_argument("--kappa-grid", default=None,
                   help="comma-separated kappa values for the iff sweeps")
    p.add_argument("--file1", default=None, help="first factor descriptor (product harness)")
    p.add_argument("--file2", default=None, help="second factor descriptor (product harness)")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("oracle",
                       help="compare the eigenvalue sum against random-basis sampling")
    p.add_argument("file", help="descriptor JSON file")
    p.add_argument("--alpha", required=True)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_oracle)
    return parser


def run(argv):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except (DescriptorError, InvalidInputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConvergenceError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
