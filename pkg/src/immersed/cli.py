"""Command line interface.

Exit codes: 0 success, 1 failed verification or non-generic input,
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from immersed.construct import RandomCurveSpec, minimal_curve, random_curve
from immersed.curve import DEFAULT_TOL, ClosedCurve, GenericityError, IndexNotIntegral, validate
from immersed.curvefile import CurveFileError, read_curve, write_curve
from immersed.rng import SplitMix64
from immersed.svg import render_svg
from immersed.whitney import WhitneyReport, analyze

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def perturb(curve: ClosedCurve, seed: int, magnitude: float = 10 * DEFAULT_TOL.sep) -> ClosedCurve:
    """Move every vertex by a deterministic offset in [-magnitude, magnitude]^2."""
    rng = SplitMix64(seed)
    return ClosedCurve(tuple(
        (x + rng.uniform(-magnitude, magnitude), y + rng.uniform(-magnitude, magnitude))
        for x, y in curve.vertices
    ))


def format_report(report: WhitneyReport) -> str:
    rows = [
        ("index", report.index),
        ("mu", f"{report.mu:+d}"),
        ("N+", report.n_plus),
        ("N-", report.n_minus),
        ("total", report.total),
        ("identity index = mu + N+ - N-", "holds" if report.identity_holds else "FAILS"),
        ("candidate genus", report.candidate_genus if report.candidate_genus is not None else "-"),
    ]
    if report.boundary_conditions is not None:
        bc = report.boundary_conditions
        rows += [
            ("  index = 1 - 2g", bc.index_is_1_minus_2g),
            ("  mu = +1", bc.mu_is_plus_one),
            ("  first double point positive", bc.first_intersection_positive),
            ("  at least 2g + 2 double points", bc.count_at_least_2g_plus_2),
        ]
    width = max(len(k) for k, _ in rows)
    return "\n".join(f"{k:<{width}}  {v}" for k, v in rows)


def _load(path: str) -> ClosedCurve:
    try:
        return read_curve(path)
    except OSError as exc:
        raise CurveFileError(f"{path}: {exc.strerror}") from None


def cmd_analyze(args) -> int:
    curve = _load(args.file)
    if args.perturb is not None:
        try:
            validate(curve)
        except GenericityError:
            curve = perturb(curve, args.perturb)
    report = analyze(curve)
    if args.json:
        print(json.dumps(report.to_dict(), sort_keys=True))
    else:
        print(format_report(report))
    return EXIT_OK


def cmd_generate(args) -> int:
    if args.genus < 1:
        print("error: --genus must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    curve = minimal_curve(args.genus)
    write_curve(curve, args.output, {"genus": args.genus, "generator": "minimal_curve"})
    if args.svg:
        render_svg(curve, analyze(curve), args.svg)
    return EXIT_OK


def cmd_random(args) -> int:
    try:
        spec = RandomCurveSpec(args.seed, args.modes, args.samples, args.decay)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    curve = random_curve(spec)
    write_curve(curve, args.output, {
        "generator": "random_curve", "seed": args.seed, "modes": args.modes,
        "samples": args.samples, "decay": args.decay,
    })
    return EXIT_OK


def cmd_verify(args) -> int:
    curve = _load(args.file)
    report = analyze(curve)
    if not report.identity_holds:
        print(f"FAIL WhitneyIdentity: index {report.index} != "
              f"{report.mu} + {report.n_plus} - {report.n_minus}")
        return EXIT_FAIL
    print(f"OK index={report.index} mu={report.mu:+d} N+={report.n_plus} N-={report.n_minus}")
    return EXIT_OK


def cmd_render(args) -> int:
    curve = _load(args.file)
    try:
        report = analyze(curve)
    except (GenericityError, IndexNotIntegral):
        report = None
    render_svg(curve, report, args.svg)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="immersed", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="print the Whitney report of a curve file")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.add_argument("--perturb", type=int, metavar="SEED",
                   help="jitter vertices deterministically if the curve is not generic")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("generate", help="write the minimal boundary curve of genus g")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--svg")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("random", help="write a seeded random generic curve")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--modes", type=int, required=True)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--decay", type=float, default=0.7)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_random)

    p = sub.add_parser("verify", help="exit 0 iff the curve is generic and satisfies Whitney's identity")
    p.add_argument("file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("render", help="draw a curve file as SVG")
    p.add_argument("file")
    p.add_argument("--svg", required=True)
    p.set_defaults(func=cmd_render)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except CurveFileError as exc:
        print(f"FAIL ParseError: {exc}")
        return EXIT_FAIL
    except GenericityError as exc:
        print(f"FAIL {exc}")
        return EXIT_FAIL
    except IndexNotIntegral as exc:
        print(f"FAIL IndexNotIntegral: {exc}")
        return EXIT_FAIL


cli = main


if __name__ == "__main__":
    sys.exit(main())
