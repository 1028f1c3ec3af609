"""``genhess`` command line.

Exit codes: 0 on any verdict, 2 on bad input, 3 when the active set exceeds
the enumeration cap or the sampling radius is unsafe.
"""

from __future__ import annotations

import argparse
import sys as _sys

import numpy as np

from . import report
from .hessian import DEFAULT_MAX_ACTIVE, ActiveSetTooLarge, analyze, generalized_hessian
from .newton import NewtonConfig, solve
from .oracle import RadiusTooLarge, sample_limiting_hessians
from .paper import run_paper_checks
from .problem import DimensionError
from .problem_file import ProblemFileError, load_problem, resolve_point

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_LIMIT = 3


def _load(args):
    try:
        prob = load_problem(args.problem)
    except OSError as exc:
        raise ProblemFileError(f"cannot read {args.problem}: {exc.strerror}") from exc
    return prob, prob.system(args.eps_active)


def _emit(args, d: dict, text: str) -> None:
    print(report.dumps(d) if args.output == "structured" else text)


def cmd_analyze(args) -> int:
    prob, sys = _load(args)
    x = resolve_point(prob, args.point)
    try:
        rep = analyze(sys, x, args.max_active)
    except ActiveSetTooLarge as exc:
        print(f"error: {exc} (try `genhess sample`)", file=_sys.stderr)
        return EXIT_LIMIT
    _emit(args, report.analysis_dict(sys, rep), report.analysis_text(sys, rep))
    return EXIT_OK


def cmd_paper_examples(args) -> int:
    results = run_paper_checks()
    for name, ok, detail in results:
        print(f"{'PASS' if ok else 'FAIL'} {name}" + (f": {detail}" if detail else ""))
    failed = sum(1 for _, ok, _ in results if not ok)
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return EXIT_OK if failed == 0 else 1


def cmd_sample(args) -> int:
    prob, sys = _load(args)
    x = resolve_point(prob, args.point)
    try:
        extremes = generalized_hessian(sys, x, args.max_active)[2].matrices()
    except ActiveSetTooLarge as exc:
        print(f"note: {exc}; samples are not matched against a hull", file=_sys.stderr)
        extremes = None
    try:
        batch = sample_limiting_hessians(sys, x, args.radius, args.count, args.seed, extremes)
    except RadiusTooLarge as exc:
        print(f"error: {exc}", file=_sys.stderr)
        return EXIT_LIMIT
    d = report.sample_dict(sys, batch, extremes)
    _emit(args, d, report.sample_text(d))
    return EXIT_OK


def cmd_solve(args) -> int:
    prob, sys = _load(args)
    x0 = resolve_point(prob, args.x0) if args.x0 is not None else np.zeros(sys.n)
    cfg = NewtonConfig(delta=args.delta, grad_tol=args.tol, max_iter=args.max_iter)
    trace = solve(sys, x0, cfg)
    d = report.trace_dict(sys, trace)
    _emit(args, d, report.trace_text(d))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="genhess", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, point=True):
        p.add_argument("problem", help="JSON problem file")
        if point:
            p.add_argument("--point", required=True, help="named point from the file or inline vector, e.g. '(-1,-1)'")
        p.add_argument("--eps-active", type=float, default=None, help="override the file's activity tolerance")
        p.add_argument("--output", choices=("structured", "text"), default="structured")

    p = sub.add_parser("analyze", help="compare the generalized Hessian with the interval set and D-matrices")
    common(p)
    p.add_argument("--max-active", type=int, default=DEFAULT_MAX_ACTIVE)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("paper-examples", help="reproduce the two worked systems")
    p.set_defaults(func=cmd_paper_examples)

    p = sub.add_parser("sample", help="finite-difference Hessians at random nearby points")
    common(p)
    p.add_argument("--radius", type=float, default=0.1)
    p.add_argument("--count", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-active", type=int, default=DEFAULT_MAX_ACTIVE)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("solve", help="regularized generalized Newton minimization of f")
    common(p, point=False)
    p.add_argument("--x0", default=None, help="start point (named or inline); default 0")
    p.add_argument("--delta", type=float, default=None)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--max-iter", type=int, default=100)
    p.set_defaults(func=cmd_solve)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ProblemFileError, DimensionError, ValueError) as exc:
        print(f"error: {exc}", file=_sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
