"""Reference two-dimensional instance with exactly known iterates.

The models are

    f(x) = -1/2 x^T diag(1, 2) x + (1/7, 5/3) x
    Q(x) = -1/2 x^T x

started at x0 = (1, 1) with multipliers (3, 3, 4, 5) and eps = 1/2.  In
canonical form the Hessian diagonals are (-1, -2) and (-1, -1); the shipped
``data/example1.json`` stores exactly that.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .analysis import analyze
from .fileio import load_example1

TOL = 1e-12

SQRT_29_2 = math.sqrt(29 / 2)

# label -> (rational form, value)
EXPECTED = {
    "x1": ("(10/7, 4/3)", (10 / 7, 4 / 3)),
    "x1_t": ("(3/2, 3/2)", (3 / 2, 3 / 2)),
    "kappa": ("(6, 2)", (6.0, 2.0)),
    "kappa1": ("(5, 5/3)", (5.0, 5 / 3)),
    "kappa2": ("(9, 3)", (9.0, 3.0)),
    "x2_t - x2": ("(1/56, 1/24)", (1 / 56, 1 / 24)),
    "difference identity": ("(1/56, 1/24)", (1 / 56, 1 / 24)),
    "shift products Q*omega1": ("(12, 12)", (12.0, 12.0)),
    "shift products f*omega1_t": ("(9, 6)", (9.0, 6.0)),
    "||x2_t - x2||": ("sqrt(29/2)/84", (SQRT_29_2 / 84,)),
    "||x1_t - x1||": ("sqrt(29/2)/21", (SQRT_29_2 / 21,)),
    "eps * ||x1_t - x1||": ("sqrt(29/2)/42", (SQRT_29_2 / 42,)),
}


@dataclass(frozen=True)
class Check:
    label: str
    rational: str
    expected: tuple
    actual: tuple
    ok: bool


def run_checks() -> list[Check]:
    """Compare every reference quantity against a fresh computation."""
    problem = load_example1()
    f, Q, sched = problem.f, problem.Q, problem.schedule
    result = analyze(f, Q, problem.x0, sched, problem.epsilon)
    trace, report = result.trace, result.report

    actual = {
        "x1": trace.x1,
        "x1_t": trace.x1_t,
        "kappa": result.kappa.values,
        "kappa1": [c.kappa1 for c in report.per_coord],
        "kappa2": [c.kappa2 for c in report.per_coord],
        "x2_t - x2": trace.x2_t - trace.x2,
        "difference identity": result.difference,
        "shift products Q*omega1": [c.G * sched.omega1 for c in report.per_coord],
        "shift products f*omega1_t": [c.H * sched.omega1_t for c in report.per_coord],
        "||x2_t - x2||": [trace.second_gap],
        "||x1_t - x1||": [trace.first_gap],
        "eps * ||x1_t - x1||": [problem.epsilon * trace.first_gap],
    }
    checks = []
    for label, (rational, expected) in EXPECTED.items():
        got = tuple(float(v) for v in np.asarray(actual[label]).ravel())
        ok = len(got) == len(expected) and all(
            abs(a - e) <= TOL for a, e in zip(got, expected))
        checks.append(Check(label, rational, expected, got, ok))

    contraction = trace.second_gap <= problem.epsilon * trace.first_gap + TOL
    checks.append(Check("||x2_t - x2|| <= eps ||x1_t - x1||", "true", (1.0,),
                        (float(contraction),), contraction))
    branches = tuple(c.branch for c in report.per_coord)
    checks.append(Check("branches", "(Eq4, Eq4)", ("Eq4", "Eq4"), branches,
                        branches == ("Eq4", "Eq4") and report.theorem_satisfied))
    return checks
