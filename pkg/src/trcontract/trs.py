"""Exact trust-region subproblem solver for diagonal Hessians.

Solves ``min q(c + d)`` subject to ``||d||_2 <= radius``.  Since the Hessian
is diagonal its eigenvectors are the coordinate axes, and the secular
equation can be written down directly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import DimensionTooLarge, NoConvergence, NonFiniteInput
from .quadratic import DiagQuadratic, _check_point, evaluate, gradient

PSI_TOL = 1e-12
# psi is also driven to a few ulps of 1/radius; PSI_TOL alone leaves a
# radius error of order radius**2 * PSI_TOL
PSI_RTOL = 4 * np.finfo(float).eps
MAX_ITER = 200


@dataclass(frozen=True)
class TrsSolution:
    step: np.ndarray
    multiplier: float
    on_boundary: bool
    hard_case: bool
    iterations: int = 0


def step_norm(g: np.ndarray, hess_diag: np.ndarray, omega: float) -> float:
    """``||(diag(hess_diag) + omega I)^{-1} g||_2``; infinite at a pole."""
    with np.errstate(divide="ignore", invalid="ignore"):
        s = g / (hess_diag + omega)
    s = np.where(g == 0, 0.0, s)
    return float(np.linalg.norm(s))


def secular(q: DiagQuadratic, center, radius: float, omega: float) -> float:
    """phi(omega) = ||s(omega)|| - radius, decreasing for omega > -min(hess)."""
    g = gradient(q, center)
    return step_norm(g, q.hess_diag, omega) - radius


def _psi_and_derivative(g, h, omega, radius):
    # psi = 1/||s|| - 1/radius is close to linear in omega near the root
    d = h + omega
    s = g / d
    norm = np.linalg.norm(s)
    psi = 1.0 / norm - 1.0 / radius
    dpsi = np.sum(g * g / d**3) / norm**3
    return psi, dpsi


def _solve_secular(g, h, radius, lo):
    """Root of the secular equation on ``(lo, inf)``.

    The bracket keeps ``||s(a)|| >= radius >= ||s(b)||`` throughout.
    """
    a = lo
    b = lo + np.linalg.norm(g) / radius
    omega = b
    tol = min(PSI_TOL, PSI_RTOL / radius)
    for it in range(1, MAX_ITER + 1):
        psi, dpsi = _psi_and_derivative(g, h, omega, radius)
        if abs(psi) <= tol:
            return omega, it
        if psi < 0:
            a = omega
        else:
            b = omega
        if b - a <= 4 * np.finfo(float).eps * max(1.0, abs(b)):
            return omega, it
        trial = omega - psi / dpsi
        if not (a < trial < b):
            trial = 0.5 * (a + b)
        elif abs(trial - omega) <= 2 * np.finfo(float).eps * abs(omega):
            return trial, it
        omega = trial
    raise NoConvergence(f"secular iteration did not converge in {MAX_ITER} steps", (a, b))


def solve_trs(q: DiagQuadratic, center, radius: float) -> TrsSolution:
    """Global minimizer of ``q(center + d)`` over ``||d||_2 <= radius``.

    The interior solution is returned only for a positive definite Hessian
    whose Newton step lies inside the ball.  In the hard case the missing
    length is put on the lowest-index coordinate of most negative curvature,
    with a nonnegative sign.
    """
    center = _check_point(q, center)
    if not np.all(np.isfinite(center)) or not np.isfinite(radius):
        raise NonFiniteInput("center and radius must be finite")
    if radius <= 0:
        raise ValueError("radius must be positive")

    h = q.hess_diag
    g = gradient(q, center)
    lam_min = float(h.min())

    if lam_min > 0:
        newton = -g / h
        if np.linalg.norm(newton) < radius:
            return TrsSolution(newton, 0.0, False, False)

    lo = max(0.0, -lam_min)
    lowest = h == lam_min
    if np.all(g[lowest] == 0):
        # the pole at -lam_min is removable; see whether its step reaches the boundary
        partial = np.zeros_like(g)
        rest = ~lowest
        partial[rest] = -g[rest] / (h[rest] + lo)
        length = np.linalg.norm(partial)
        if length <= radius:
            if lam_min >= 0:
                # singular PSD Hessian with a minimizer inside the ball
                return TrsSolution(partial, 0.0, bool(np.isclose(length, radius)), False)
            j = int(np.flatnonzero(lowest)[0])
            partial[j] = np.sqrt(radius**2 - length**2)
            return TrsSolution(partial, lo, True, True)

    omega, iterations = _solve_secular(g, h, radius, lo)
    step = -g / (h + omega)
    return TrsSolution(step, float(omega), True, False, iterations)


def _sphere_directions(dim: int, count: int) -> np.ndarray:
    if dim == 1:
        return np.array([[-1.0], [1.0]])
    if dim == 2:
        theta = np.linspace(0.0, 2 * np.pi, count, endpoint=False)
        return np.column_stack([np.cos(theta), np.sin(theta)])
    # Fibonacci lattice on the 2-sphere
    k = np.arange(count) + 0.5
    z = 1 - 2 * k / count
    r = np.sqrt(1 - z**2)
    phi = np.pi * (1 + 5**0.5) * k
    return np.column_stack([r * np.cos(phi), r * np.sin(phi), z])


def brute_force_trs(q: DiagQuadratic, center, radius: float,
                    grid_points_per_axis: int = 201):
    """Grid search over the ball, for testing ``solve_trs``.

    Returns the best sampled point (absolute coordinates, not the step) and
    its objective value.  Every candidate is feasible, so the returned value
    is an upper bound on the true minimum.
    """
    center = _check_point(q, center)
    if q.dim > 3:
        raise DimensionTooLarge(f"brute force supports dim <= 3, got {q.dim}")
    if grid_points_per_axis < 11:
        raise ValueError("grid_points_per_axis must be at least 11")

    axis = np.linspace(-radius, radius, grid_points_per_axis)
    cube = np.array(list(itertools.product(axis, repeat=q.dim)))
    inside = cube[np.linalg.norm(cube, axis=1) <= radius]
    n_dirs = 4 * grid_points_per_axis if q.dim == 2 else grid_points_per_axis**2
    shell = radius * _sphere_directions(q.dim, n_dirs)
    steps = np.vstack([inside, shell])

    points = center + steps
    values = 0.5 * np.sum(q.hess_diag * points**2, axis=1) + points @ q.lin + q.offset
    best = int(np.argmin(values))
    return points[best], float(evaluate(q, points[best]))
