"""Command line interface.

Exit codes: 0 success (all requested verdicts passing, budget-skipped
checks report as unchecked), 1 a mathematical verdict failed, 2 usage or
input errors.  All output is deterministic for a fixed argument list and
seed.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from . import acceptance, basis, group_ops, linsys, paths, quasi
from .arith import rational_to_str
from .poly import Polynomial, parse_poly

OK, MATH_FAIL, USAGE = 0, 1, 2


def _print_json(obj):
    print(json.dumps(obj, indent=2, ensure_ascii=False))


def _format_matrix(entries, row_labels=None, col_labels=None):
    rows = [[str(x) for x in row] for row in entries]
    head = [str(c) for c in col_labels] if col_labels else None
    stubs = [str(r) for r in row_labels] if row_labels else [""] * len(rows)
    stub_w = max((len(s) for s in stubs), default=0)
    ncols = len(rows[0]) if rows else 0
    widths = [
        max(
            [len(rows[r][c]) for r in range(len(rows))]
            + ([len(head[c])] if head else [])
        )
        for c in range(ncols)
    ]
    lines = []
    if head:
        lines.append(
            " " * stub_w
            + "  "
            + "  ".join(head[c].rjust(widths[c]) for c in range(ncols))
        )
    for stub, row in zip(stubs, rows):
        lines.append(
            stub.rjust(stub_w)
            + "  "
            + "  ".join(row[c].rjust(widths[c]) for c in range(ncols))
        )
    return "\n".join(lines)


def _read_poly_file(path: str) -> Polynomial:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ValueError(f"cannot read polynomial file: {exc}") from None
    stripped = text.strip()
    if not stripped:
        raise ValueError(f"polynomial file {path!r} is empty")
    if stripped.startswith("["):
        try:
            return Polynomial.from_json_obj(json.loads(stripped))
        except json.JSONDecodeError as exc:
            raise ValueError(f"malformed polynomial JSON in {path!r}: {exc}")
    return parse_poly(stripped)


def _quasi_report_obj(report):
    return {
        "m": report.m,
        "is_quasiinvariant": report.is_quasiinvariant,
        "checks": [
            {
                "pair": list(c.pair),
                "difference_zero": c.difference_zero,
                "largest_power": c.largest_power,
                "required_power": c.required_power,
                "divisible": c.divisible,
            }
            for c in report.checks
        ],
    }


# --- subcommands ------------------------------------------------------------


def cmd_basis(args) -> int:
    report = basis.build_basis(args.m, verify=args.verify)
    if args.format == "json":
        obj = {
            "m": report.m,
            "verify": report.verify,
            "elements": {
                e.name: e.poly.to_json_obj() for e in report.elements
            },
            "degrees": {e.name: e.degree for e in report.elements},
            "expected_degrees": {
                e.name: e.expected_degree for e in report.elements
            },
            "null_vectors": {
                "A1": {
                    "columns": [list(c) for c in report.null_vector_a1[0]],
                    "coefficients": [
                        rational_to_str(x) for x in report.null_vector_a1[1]
                    ],
                },
                "A2": {
                    "columns": [list(c) for c in report.null_vector_a2[0]],
                    "coefficients": [
                        rational_to_str(x) for x in report.null_vector_a2[1]
                    ],
                },
            },
            "verdicts": {
                "degrees_ok": report.degrees_ok,
                "quasi_ok": report.quasi_ok,
                "s23_ok": report.s23_ok,
                "independence": report.independence,
            },
            "passed": report.passed,
        }
        _print_json(obj)
    elif args.format == "latex":
        for e in report.elements:
            print(f"{e.name}: {basis.poly_to_latex(e.poly)}")
    else:
        for e in report.elements:
            print(f"{e.name} (degree {e.degree}): {e.poly}")
        labels, vec = report.null_vector_a1
        print(
            "null vector A1:",
            ", ".join(f"C{list(l)}={rational_to_str(v)}" for l, v in zip(labels, vec)),
        )
        labels, vec = report.null_vector_a2
        print(
            "null vector A2:",
            ", ".join(f"C{list(l)}={rational_to_str(v)}" for l, v in zip(labels, vec)),
        )
        print(f"degrees ok: {report.degrees_ok}")
        if report.verify in ("quasi", "full"):
            print(f"quasiinvariance ok: {report.quasi_ok}")
            print(f"s23 invariance ok: {report.s23_ok}")
        if report.verify == "full":
            for name, verdict in report.independence.items():
                shown = "skipped (budget)" if verdict is None else verdict
                print(f"independence {name}: {shown}")
    return OK if report.passed else MATH_FAIL


def cmd_check(args) -> int:
    try:
        P = _read_poly_file(args.poly)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    report = quasi.is_quasiinvariant(P, args.m)
    if args.format == "json":
        _print_json(_quasi_report_obj(report))
    else:
        print(f"polynomial: {P}")
        for c in report.checks:
            power = "infinite" if c.largest_power is None else c.largest_power
            print(
                f"pair {c.pair}: difference {'zero' if c.difference_zero else 'nonzero'},"
                f" largest dividing power {power}, required {c.required_power},"
                f" {'ok' if c.divisible else 'FAIL'}"
            )
        print(
            f"{'is' if report.is_quasiinvariant else 'is NOT'} quasiinvariant"
            f" of order m={report.m}"
        )
    return OK if report.is_quasiinvariant else MATH_FAIL


def cmd_system(args) -> int:
    try:
        sys_ = linsys.build_system(args.m, args.d)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    shown = linsys.restrict_Bm(sys_) if args.restrict_bm else sys_
    obj = shown.to_json_obj()
    if args.blocks:
        blocks = linsys.extract_blocks(args.m, args.d)
        obj["blocks"] = [
            [[str(x) for x in row] for row in b] for b in blocks.all_blocks()
        ]
    if args.format == "json":
        _print_json(obj)
    else:
        name = "restricted system" if args.restrict_bm else "full system"
        print(f"{name} m={shown.m} d={shown.d} shape {shown.shape}")
        print(_format_matrix(shown.entries, shown.rows, shown.cols))
        if args.blocks:
            blocks = linsys.extract_blocks(args.m, args.d)
            for f, b in enumerate(blocks.leading, start=1):
                print(f"block {f}:")
                print(_format_matrix(b))
            print("final block:")
            print(_format_matrix(blocks.final))
    return OK


def cmd_blocks(args) -> int:
    try:
        blocks = linsys.extract_blocks(args.m, args.d)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    dets = [linsys.det_exact(b) for b in blocks.all_blocks()]
    if args.format == "json":
        _print_json(
            {
                "m": blocks.m,
                "d": blocks.d,
                "blocks": [
                    [[str(x) for x in row] for row in b]
                    for b in blocks.all_blocks()
                ],
                "determinants": [str(x) for x in dets],
            }
        )
    else:
        for f, b in enumerate(blocks.leading, start=1):
            print(f"block {f} (det {dets[f - 1]}):")
            print(_format_matrix(b))
        print(f"final block (det {dets[-1]}):")
        print(_format_matrix(blocks.final))
    return OK


def cmd_det(args) -> int:
    try:
        sys_ = linsys.build_system(args.m, args.d)
        sub = linsys.restrict_Bm(sys_)
        blocks = linsys.extract_blocks(args.m, args.d)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    det = linsys.det_exact(sub.entries)
    block_dets = [linsys.det_exact(b) for b in blocks.all_blocks()]
    product = Fraction(1)
    for x in block_dets:
        product *= x
    agree = det == product
    if args.format == "json":
        _print_json(
            {
                "m": args.m,
                "d": args.d,
                "det": str(det),
                "block_dets": [str(x) for x in block_dets],
                "product": str(product),
                "agree": agree,
                "nonzero": det != 0,
            }
        )
    else:
        print(f"det of restricted system (m={args.m}, d={args.d}): {det}")
        print(f"block determinants: {[str(x) for x in block_dets]}")
        print(f"product: {product}")
        print(f"agreement: {agree}; nonzero: {det != 0}")
    return OK if (agree and det != 0) else MATH_FAIL


def cmd_dims(args) -> int:
    series = quasi.qi_dimension_series(args.m, args.max_degree)
    computed = [
        len(quasi.graded_qi_basis(args.m, d)) for d in range(args.max_degree + 1)
    ]
    agree = series == computed
    if args.format == "json":
        _print_json(
            {
                "m": args.m,
                "max_degree": args.max_degree,
                "series": series,
                "computed": computed,
                "agree": agree,
            }
        )
    else:
        print("degree  series  computed")
        for d, (s, c) in enumerate(zip(series, computed)):
            print(f"{d:6d}  {s:6d}  {c:8d}")
        print(f"agreement: {agree}")
    return OK if agree else MATH_FAIL


def _parse_point(text):
    parts = text.split(",")
    if len(parts) != 2:
        raise ValueError(f"point must be X,Y: {text!r}")
    return (int(parts[0]), int(parts[1]))


def cmd_paths(args) -> int:
    if args.paths_command == "count":
        try:
            problem = paths.PathProblem(
                start=_parse_point(args.start),
                end=_parse_point(args.end),
                barrier=args.barrier,
            )
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return USAGE
        count = paths.count_paths_dp(problem)
        if args.format == "json":
            _print_json(
                {
                    "start": list(problem.start),
                    "end": list(problem.end),
                    "barrier": problem.barrier,
                    "count": str(count),
                    "backend": paths.backend(),
                }
            )
        else:
            where = f" avoiding x+y={problem.barrier}" if problem.barrier is not None else ""
            print(
                f"paths {problem.start} -> {problem.end}{where}: {count}"
            )
        return OK
    print("error: unknown paths subcommand", file=sys.stderr)
    return USAGE


def _thm2_report_obj(report):
    return {
        "params": report.params,
        "entries": [[str(x) for x in row] for row in report.entries],
        "det": str(report.det),
        "starts": [list(p) for p in report.starts],
        "ends": [list(p) for p in report.ends],
        "barrier": report.barrier,
        "applicable": report.applicable,
        "family_count": None if report.family_count is None else str(report.family_count),
        "checked": report.checked,
        "equal": report.equal,
        "note": report.note,
    }


def _thm1_report_obj(report):
    obj = _thm2_report_obj(report)
    obj["prefactor"] = None if report.prefactor is None else str(report.prefactor)
    obj["inner_params"] = list(report.inner_params)
    return obj


def _print_thm_report(report, kind):
    print(f"{kind} params: {report.params}")
    print(f"matrix det: {report.det}")
    if kind == "thm1":
        print(f"prefactor: {report.prefactor}")
    print(f"starts: {list(report.starts)}")
    print(f"ends: {list(report.ends)}")
    print(f"barrier: x+y={report.barrier}")
    if not report.checked:
        print(f"family count: unchecked ({report.note})")
    else:
        print(f"family count: {report.family_count}")
        print(f"identity holds: {report.equal}")


def _parse_params(text, count, label):
    parts = text.split(",")
    if len(parts) != count:
        raise ValueError(f"{label} needs {count} comma-separated integers")
    return [int(p) for p in parts]


def cmd_identity(args) -> int:
    if args.identity_command == "thm1":
        try:
            C, D, E, alpha, beta, k = _parse_params(args.params, 6, "thm1")
            report = paths.verify_thm1(C, D, E, alpha, beta, k)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return USAGE
        if args.format == "json":
            _print_json(_thm1_report_obj(report))
        else:
            _print_thm_report(report, "thm1")
        if report.checked and not report.equal:
            return MATH_FAIL
        return OK
    if args.identity_command == "thm2":
        try:
            a, b, c, d, e, n = _parse_params(args.params, 6, "thm2")
            report = paths.verify_thm2(a, b, c, d, e, n)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return USAGE
        if args.format == "json":
            _print_json(_thm2_report_obj(report))
        else:
            _print_thm_report(report, "thm2")
        if report.checked and not report.equal:
            return MATH_FAIL
        return OK
    if args.identity_command == "sweep":
        rng = random.Random(args.seed)
        results = []
        failed = 0
        unchecked = 0
        params_list = paths.sample_thm1_instances(rng, args.trials)
        for params in params_list:
            report = paths.verify_thm1(*params)
            entry = _thm1_report_obj(report)
            entry["kind"] = "thm1"
            results.append(entry)
            if not report.checked:
                unchecked += 1
            elif not report.equal:
                failed += 1
        grid = list(paths.thm2_grid(coord_bound=8, nmax=2))
        step = max(1, len(grid) // args.trials)
        for inst in grid[:: step][: args.trials]:
            report = paths.verify_thm2(*inst)
            entry = _thm2_report_obj(report)
            entry["kind"] = "thm2"
            results.append(entry)
            if not report.checked:
                unchecked += 1
            elif not report.equal:
                failed += 1
        _print_json(
            {
                "seed": args.seed,
                "trials": args.trials,
                "instances": len(results),
                "failed": failed,
                "unchecked": unchecked,
                "results": results,
            }
        )
        return MATH_FAIL if failed else OK
    print("error: unknown identity subcommand", file=sys.stderr)
    return USAGE


def cmd_identities(args) -> int:
    rng = random.Random(args.seed)
    samples = []
    for _ in range(args.samples):
        terms = {}
        for _ in range(rng.randint(1, 10)):
            exp = tuple(rng.randint(0, 4) for _ in range(3))
            terms[exp] = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
        samples.append(Polynomial(terms))
    report = group_ops.verify_identities(samples)
    if args.format == "json":
        _print_json(
            {
                "seed": args.seed,
                "samples": args.samples,
                "element_level": report.element_level,
                "sample_failures": [
                    {"sample": i, "identity": label}
                    for i, verdicts in enumerate(report.sample_level)
                    for label, ok in verdicts.items()
                    if not ok
                ],
                "passed": report.passed,
            }
        )
    else:
        for label, ok in report.element_level.items():
            print(f"element level: {label}: {'ok' if ok else 'FAIL'}")
        print(
            f"samples: {args.samples}, all pass: "
            f"{all(all(v.values()) for v in report.sample_level)}"
        )
    return OK if report.passed else MATH_FAIL


def cmd_selftest(args) -> int:
    indices = None
    if args.only:
        indices = {int(x) for x in args.only.split(",")}
    results = acceptance.run_all(indices)
    failed = 0
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        timing = f"{r.seconds:.2f}s"
        over = "" if r.within_limit else f" (over {r.limit:.0f}s limit)"
        print(f"[{status}] criterion {r.index}: {r.title} [{timing}{over}] {r.detail}")
        if not (r.passed and r.within_limit):
            failed += 1
    print(f"{len(results) - failed}/{len(results)} criteria passed")
    return OK if failed == 0 else MATH_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quasi3",
        description=(
            "Exact construction of the six-element quasiinvariant quotient "
            "basis for S3, with determinant and lattice-path verification."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("basis", help="construct and verify the six elements")
    p.add_argument("--m", type=int, required=True)
    p.add_argument(
        "--verify", choices=basis.VERIFY_LEVELS, default="quasi",
        help="verification depth (default: quasi)",
    )
    p.add_argument("--format", choices=("text", "json", "latex"), default="text")
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("check", help="check a polynomial file for quasiinvariance")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--poly", required=True, help="file with JSON or text polynomial")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("system", help="print a coefficient system")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--restrict-bm", action="store_true")
    p.add_argument("--blocks", action="store_true")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_system)

    p = sub.add_parser("blocks", help="print the diagonal blocks and their dets")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_blocks)

    p = sub.add_parser("det", help="determinant vs product of block dets")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_det)

    p = sub.add_parser("dims", help="graded dimensions vs the series")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--max-degree", type=int, required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_dims)

    p = sub.add_parser("paths", help="lattice path counting")
    psub = p.add_subparsers(dest="paths_command", required=True)
    pc = psub.add_parser("count", help="count barrier-avoiding paths")
    pc.add_argument("--start", required=True, metavar="X0,Y0")
    pc.add_argument("--end", required=True, metavar="X1,Y1")
    pc.add_argument("--barrier", type=int, default=None, metavar="L")
    pc.add_argument("--format", choices=("text", "json"), default="text")
    pc.set_defaults(func=cmd_paths)

    p = sub.add_parser("identity", help="verify a determinant identity")
    isub = p.add_subparsers(dest="identity_command", required=True)
    i1 = isub.add_parser("thm1", help="prefactor times family count")
    i1.add_argument("--params", required=True, metavar="C,D,E,ALPHA,BETA,K")
    i1.add_argument("--format", choices=("text", "json"), default="text")
    i1.set_defaults(func=cmd_identity)
    i2 = isub.add_parser("thm2", help="determinant equals family count")
    i2.add_argument("--params", required=True, metavar="A,B,C,D,E,N")
    i2.add_argument("--format", choices=("text", "json"), default="text")
    i2.set_defaults(func=cmd_identity)
    isw = isub.add_parser("sweep", help="seeded random verification sweep")
    isw.add_argument("--seed", type=int, required=True)
    isw.add_argument("--trials", type=int, required=True)
    isw.set_defaults(func=cmd_identity)

    p = sub.add_parser("identities", help="group algebra identity checks")
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_identities)

    p = sub.add_parser("selftest", help="run the acceptance criteria")
    p.add_argument("--only", default=None, metavar="N[,N...]")
    p.set_defaults(func=cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except paths.BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return MATH_FAIL
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
