"""Exit criteria.  Each test records one PASS/FAIL line, shown in the summary."""

import time

import numpy as np
import pytest

from trcontract import (DiagQuadratic, EXAMPLE2, boole_pair_event, brute_force_trs,
                        check_theorem1, check_theorem2, compute_kappa, contraction_event,
                        damped_step, difference_identity, evaluate, min_epsilon_1d, prob_grid,
                        run_two_steps, solve_trs, sweep)
from trcontract import example1
from trcontract.analysis import kappa_bounds
from trcontract.prob import PAPER_M_VALUES, ProbScenario, boole_denominators, default_epsilon_grid

from _instances import nonconvex_diag, random_instance, targeted_instance
from conftest import ACCEPTANCE_LINES


def record(label, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] {label}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def test_ac1_example1_exact_reproduction():
    start = time.perf_counter()
    checks = example1.run_checks()
    elapsed = time.perf_counter() - start
    failed = [c.label for c in checks if not c.ok]
    record("AC1 Example-1 reproduction", not failed and elapsed < 1.0,
           f"{len(checks) - len(failed)}/{len(checks)} values within 1e-12, {elapsed:.3f}s"
           + (f", failed {failed}" if failed else ""))


def test_ac2_difference_identity():
    rng = np.random.default_rng(20)
    start = time.perf_counter()
    worst = 0.0
    for _ in range(1000):
        dim = int(rng.integers(1, 9))
        f, Q, x0, sched = random_instance(rng, dim)
        trace = run_two_steps(f, Q, x0, sched)
        ident = difference_identity(f, Q, trace, sched)
        # x2_t - x2 is itself a difference of iterates, so its rounding
        # error scales with the iterate magnitudes
        scale = max(np.abs(v).max() for v in (trace.x0, trace.x1, trace.x1_t, trace.x2, trace.x2_t))
        worst = max(worst, np.abs(ident - (trace.x2_t - trace.x2)).max() / scale)
    elapsed = time.perf_counter() - start
    record("AC2 difference identity", worst <= 1e-12 and elapsed < 5.0,
           f"1000 instances, worst relative error {worst:.2e}, {elapsed:.2f}s")


def test_ac3_theorem1_iff():
    rng = np.random.default_rng(30)
    start = time.perf_counter()
    counterexamples = satisfied = 0
    done = 0
    while done < 1000:
        eps = float(rng.uniform(0, 1))
        if done % 2:
            f, Q, x0, sched = random_instance(rng, 1)
        else:
            f, Q, x0, sched = targeted_instance(rng, 1, eps, spread=rng.uniform(0.1, 3))
        G = Q.hess_diag[0] + sched.omega2_t
        H = f.hess_diag[0] + sched.omega2
        if G * sched.omega1 == H * sched.omega1_t:
            continue
        trace = run_two_steps(f, Q, x0, sched)
        kappa = compute_kappa(trace).values[0]
        report = check_theorem1(f, Q, sched, kappa, eps, trace)
        truth = trace.observed_ratio <= eps + 1e-9
        counterexamples += report.theorem_satisfied != truth
        satisfied += report.theorem_satisfied
        done += 1
    elapsed = time.perf_counter() - start
    record("AC3 one-dimensional iff", counterexamples == 0 and elapsed < 5.0,
           f"1000 instances ({satisfied} satisfied), {counterexamples} counterexamples, {elapsed:.2f}s")


def test_ac4_no_contraction_for_kappa_in_minus_one_zero():
    rng = np.random.default_rng(40)
    start = time.perf_counter()
    kappas = -1 + 1e-3 * np.arange(1, 1000)
    lowest = np.inf
    for kappa in kappas:
        G, H, w1, w1t = rng.uniform(1e-3, 1e2, (4, 100))
        for args in zip(G, H, w1, w1t):
            lowest = min(lowest, min_epsilon_1d(*args, kappa))
    elapsed = time.perf_counter() - start
    record("AC4 kappa in (-1,0) bound", lowest >= 1 - 1e-12 and elapsed < 10.0,
           f"{kappas.size * 100} evaluations, smallest min_epsilon {lowest:.15f}, {elapsed:.2f}s")


def test_ac5_theorem2_sufficiency():
    rng = np.random.default_rng(50)
    start = time.perf_counter()
    satisfied = violations = 0
    for k in range(1000):
        dim = int(rng.integers(2, 9))
        eps = float(rng.uniform(0, 1))
        if k % 4 == 0:
            f, Q, x0, sched = random_instance(rng, dim)
        else:
            f, Q, x0, sched = targeted_instance(rng, dim, eps, spread=rng.uniform(0.1, 1.5))
        trace = run_two_steps(f, Q, x0, sched)
        report = check_theorem2(f, Q, sched, compute_kappa(trace), eps, trace)
        if report.theorem_satisfied:
            satisfied += 1
            violations += report.observed_ratio > eps + 1e-9
    elapsed = time.perf_counter() - start
    record("AC5 diagonal sufficiency", violations == 0 and satisfied > 0 and elapsed < 10.0,
           f"1000 instances, {satisfied} satisfied, {violations} violations, {elapsed:.2f}s")


def test_ac6_trs_oracle_and_round_trip():
    rng = np.random.default_rng(60)
    start = time.perf_counter()
    worst_gap = -np.inf
    worst_round_trip = 0.0
    for _ in range(200):
        dim = int(rng.integers(1, 3))
        q = DiagQuadratic(nonconvex_diag(rng, dim), rng.normal(0, 2, dim))
        c = rng.normal(0, 2, dim)
        radius = float(rng.uniform(0.1, 3))
        sol = solve_trs(q, c, radius)
        _, brute = brute_force_trs(q, c, radius, 201)
        worst_gap = max(worst_gap, evaluate(q, c + sol.step) - brute)

        omega = -q.hess_diag.min() + rng.uniform(0.05, 5)
        target = damped_step(q, c, omega)
        rt = solve_trs(q, c, float(np.linalg.norm(target - c)))
        worst_round_trip = max(worst_round_trip,
                               abs(evaluate(q, c + rt.step) - evaluate(q, target)))
    elapsed = time.perf_counter() - start
    ok = worst_gap <= 1e-6 and worst_round_trip <= 1e-9 and elapsed < 30.0
    record("AC6 TRS oracle + round trip", ok,
           f"max(solver - brute) {worst_gap:.2e}, round-trip error {worst_round_trip:.2e}, "
           f"{elapsed:.2f}s")


def test_ac7_probability_curves():
    eps = default_epsilon_grid(101)
    peak = max(prob_grid(EXAMPLE2, 0.1, e, 1024) for e in eps)

    start = time.perf_counter()
    grid_curves = sweep(EXAMPLE2, PAPER_M_VALUES, eps, "grid", 1024)
    elapsed = time.perf_counter() - start
    monotone = all(np.all(np.diff(c.probs) >= 0) for c in grid_curves)

    mc_curves = sweep(EXAMPLE2, PAPER_M_VALUES, eps, "monte_carlo", 10**6, seed=7)
    worst = -np.inf
    for g, mc in zip(grid_curves, mc_curves):
        excess = np.abs(g.probs - mc.probs) - (3 * mc.stderr + 2 / 1024)
        worst = max(worst, excess.max())

    ok = 0.20 <= peak <= 0.30 and elapsed < 120 and monotone and worst <= 0
    record("AC7 probability curves", ok,
           f"peak at m=0.1 {peak:.4f}, sweep {elapsed:.2f}s, monotone={monotone}, "
           f"max grid/MC excess over band {worst:.2e} (<= 0 required)")


def test_ac8_boole_rearrangement():
    rng = np.random.default_rng(80)
    start = time.perf_counter()
    need = 100_000
    taken = mismatches = 0
    while taken < need:
        n = 200_000
        hf, hq = -rng.uniform(0.1, 3, (2, n))
        w1, w1t = rng.uniform(0.1, 5, (2, n))
        kappa = rng.uniform(-5, 5, n)
        w2 = -hf + rng.uniform(1e-3, 5, n)
        w2t = -hq + rng.uniform(1e-3, 5, n)
        e = rng.uniform(0, 1, n)
        d1 = (e + 1) * (hf + w2) - kappa * w1
        d2 = (e - 1) * (hf + w2) + kappa * w1
        keep = np.flatnonzero((d1 > 0) & (d2 > 0))[: need - taken]
        for i in keep:
            s = ProbScenario(hf[i], hq[i], w1[i], w1t[i], kappa[i])
            mismatches += (boole_pair_event(s, w2[i], w2t[i], e[i])
                           != contraction_event(s, w2[i], w2t[i], e[i]))
        taken += keep.size
    elapsed = time.perf_counter() - start
    record("AC8 Boole rearrangement", mismatches == 0 and elapsed < 5.0,
           f"{taken} feasible points with both denominators positive, "
           f"{mismatches} mismatches, {elapsed:.2f}s")
