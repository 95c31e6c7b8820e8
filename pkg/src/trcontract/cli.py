"""Command-line entry point: ``trcontract <subcommand> ...``.

Exit codes: 0 success (or condition satisfied), 2 condition not satisfied,
1 any error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import example1
from .analysis import analyze, compute_kappa, run_two_steps
from .errors import TrustRegionError
from .fileio import format_csv, parse_problem, parse_scenario, write_csv
from .prob import EXAMPLE2, PAPER_M_VALUES, default_epsilon_grid, sweep
from .quadratic import evaluate
from .trs import solve_trs

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NOT_SATISFIED = 2


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: {message}")


def _paint(text: str, ok: bool) -> str:
    if os.environ.get("NO_COLOR") or not sys.stdout.isatty():
        return text
    return f"\033[{32 if ok else 31}m{text}\033[0m"


def _vec(v) -> str:
    return "(" + ", ".join(format(float(x), ".12g") for x in np.ravel(v)) + ")"


def _show(values) -> str:
    if all(isinstance(v, str) for v in values):
        return "(" + ", ".join(values) + ")"
    return _vec(values)


def cmd_check(args) -> int:
    p = parse_problem(args.problem)
    result = analyze(p.f, p.Q, p.x0, p.schedule, p.epsilon)
    report = result.report
    theorem = "one-dimensional (iff)" if p.dim == 1 else "diagonal (sufficient)"
    print(f"test: {theorem}, epsilon = {report.epsilon:g}")
    print(f"x1 = {_vec(result.trace.x1)}  x1_t = {_vec(result.trace.x1_t)}")
    print(f"x2 = {_vec(result.trace.x2)}  x2_t = {_vec(result.trace.x2_t)}")
    for c in report.per_coord:
        print(f"  [{c.i}] G={c.G:.12g} H={c.H:.12g} kappa={c.kappa:.12g} "
              f"kappa1={c.kappa1:.12g} kappa2={c.kappa2:.12g} branch={c.branch} "
              f"factor={c.factor:.12g} {_paint('ok' if c.satisfied else 'fails', c.satisfied)}")
    print(f"min_epsilon = {report.min_epsilon:.12g}  observed_ratio = {report.observed_ratio:.12g}")
    verdict = "SATISFIED" if report.theorem_satisfied else "NOT SATISFIED"
    print(f"verdict: {_paint(verdict, report.theorem_satisfied)}")
    print(json.dumps(report.to_dict()))
    return EXIT_OK if report.theorem_satisfied else EXIT_NOT_SATISFIED


def cmd_kappa(args) -> int:
    p = parse_problem(args.problem)
    kappa = compute_kappa(run_two_steps(p.f, p.Q, p.x0, p.schedule))
    values = [float(v) if d else None for v, d in zip(kappa.values, kappa.defined_mask)]
    print(json.dumps({"kappa": values, "defined_mask": kappa.defined_mask.tolist()}))
    return EXIT_OK


def cmd_trs(args) -> int:
    p = parse_problem(args.problem)
    model = p.f if args.model == "f" else p.Q
    sol = solve_trs(model, p.x0, args.radius)
    x = np.asarray(p.x0) + sol.step
    print(json.dumps({
        "step": sol.step.tolist(),
        "point": x.tolist(),
        "value": evaluate(model, x),
        "multiplier": sol.multiplier,
        "on_boundary": sol.on_boundary,
        "hard_case": sol.hard_case,
    }))
    return EXIT_OK


def cmd_prob(args) -> int:
    scenario = parse_scenario(args.scenario) if args.scenario else EXAMPLE2
    if args.eps_points < 2:
        raise ValueError("--eps-points must be at least 2")
    method = "grid" if args.method == "grid" else "monte_carlo"
    resolution = args.cells if method == "grid" else args.samples
    curves = sweep(scenario, sorted(args.m), default_epsilon_grid(args.eps_points),
                   method=method, resolution=resolution, seed=args.seed,
                   feasible_only=args.feasible_only)
    if not args.out:
        sys.stdout.write(format_csv(curves))
    else:
        write_csv(curves, args.out)
        for c in curves:
            j = int(np.argmax(c.probs))
            print(f"m={c.m:g}: max prob {c.probs[j]:.6f} at eps={c.epsilons[j]:g}",
                  file=sys.stderr)
    return EXIT_OK


def cmd_verify_example1(args) -> int:
    checks = example1.run_checks()
    for c in checks:
        status = _paint("PASS" if c.ok else "FAIL", c.ok)
        print(f"{status}  {c.label}: expected {c.rational}, got {_show(c.actual)}")
    dist = example1.EXPECTED["||x2_t - x2||"][1][0]
    bound = example1.EXPECTED["eps * ||x1_t - x1||"][1][0]
    print(f"‖x̃₂−x₂‖₂ = {dist:.10f}…, bound = {bound:.10f}…")
    return EXIT_OK if all(c.ok for c in checks) else EXIT_ERROR


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="trcontract",
                     description="Distance contraction between trust-region minimizers "
                                 "of two non-convex diagonal quadratics.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check", help="run both steps and test the contraction condition")
    p.add_argument("problem")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("kappa", help="print the diagonal kappa")
    p.add_argument("problem")
    p.set_defaults(func=cmd_kappa)

    p = sub.add_parser("trs", help="solve the trust-region subproblem at x0")
    p.add_argument("problem")
    p.add_argument("--radius", type=float, required=True)
    p.add_argument("--model", choices=["f", "q"], default="f")
    p.set_defaults(func=cmd_trs)

    p = sub.add_parser("prob", help="sweep Prob(eps) over region scales m and write CSV")
    p.add_argument("--m", type=float, nargs="+", default=list(PAPER_M_VALUES))
    p.add_argument("--eps-points", type=int, default=101)
    p.add_argument("--method", choices=["grid", "mc"], default="grid")
    p.add_argument("--cells", type=int, default=1024)
    p.add_argument("--samples", type=int, default=10**6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--scenario", help="JSON with hess_f, hess_Q, omega1, omega1_t, kappa")
    p.add_argument("--feasible-only", action="store_true",
                   help="count points with non-positive shifted curvature as non-events")
    p.add_argument("--out", help="CSV path (default: stdout)")
    p.set_defaults(func=cmd_prob)

    p = sub.add_parser("verify-example1", help="reproduce the 2-D reference instance")
    p.set_defaults(func=cmd_verify_example1)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_ERROR
    except (TrustRegionError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
