"""Probability that random second-step multipliers give contraction.

For a one-dimensional scenario the second-step multipliers ``(omega2,
omega2_t)`` are drawn uniformly from ``[0, m*omega1] x [0, m*omega1_t]``.
Prob(eps) is the fraction of that rectangle on which the contraction
factor ``|1 + omega1_t (1+kappa)/G - omega1 kappa/H|`` is at most eps, where
``G = hess_Q + omega2_t`` and ``H = hess_f + omega2``.

By default the whole rectangle is integrated, including points with
``G <= 0`` or ``H <= 0``.  This matches the normalized Boole integral over
the rectangle.  ``feasible_only=True`` counts those points as non-events.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .analysis import contraction_factor

DEFAULT_CELLS = 1024
DEFAULT_SAMPLES = 10**6
PAPER_M_VALUES = (1e-3, 1e-2, 1e-1, 1.0, 10.0, 1e2, 1e3)


@dataclass(frozen=True)
class ProbScenario:
    hess_f: float
    hess_Q: float
    omega1: float
    omega1_t: float
    kappa: float

    def __post_init__(self):
        if not (self.hess_f < 0 and self.hess_Q < 0):
            raise ValueError("scenario models must be non-convex (negative curvature)")
        if not (self.omega1 > 0 and self.omega1_t > 0):
            raise ValueError("first-step multipliers must be positive")


EXAMPLE2 = ProbScenario(hess_f=-2.0, hess_Q=-1.0, omega1=3.0, omega1_t=3.0, kappa=-2.0)


@dataclass(frozen=True)
class ProbCurve:
    m: float
    epsilons: np.ndarray
    probs: np.ndarray
    stderr: np.ndarray
    method: str


def contraction_measure(scenario: ProbScenario, omega2, omega2_t,
                        feasible_only: bool = True):
    """Contraction factor on the rectangle, ``inf`` where it cannot be an event.

    Poles (``G == 0`` or ``H == 0``) are always ``inf``; with
    ``feasible_only`` so is every point with a non-positive shift.
    """
    H = scenario.hess_f + np.asarray(omega2, dtype=float)
    G = scenario.hess_Q + np.asarray(omega2_t, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        val = np.abs(contraction_factor(G, H, scenario.omega1, scenario.omega1_t,
                                        scenario.kappa))
    val = np.where(np.isfinite(val), val, np.inf)
    if feasible_only:
        val = np.where((G > 0) & (H > 0), val, np.inf)
    return val


def contraction_event(scenario: ProbScenario, omega2, omega2_t, epsilon,
                      feasible_only: bool = True):
    """True where both shifted curvatures are positive and the factor is <= eps."""
    out = contraction_measure(scenario, omega2, omega2_t, feasible_only) <= epsilon
    return bool(out) if np.ndim(out) == 0 else out


def boole_pair_event(scenario: ProbScenario, omega2, omega2_t, epsilon):
    """The contraction condition in the rearranged two-indicator form.

    It is written as two bounds on ``G`` and is only equivalent to the
    absolute-value predicate under particular signs of the two denominators.
    Kept as a cross-check.
    """
    k, w1, w1t = scenario.kappa, scenario.omega1, scenario.omega1_t
    H = scenario.hess_f + np.asarray(omega2, dtype=float)
    G = scenario.hess_Q + np.asarray(omega2_t, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        lower = -(k + 1) * w1t * H / ((epsilon + 1) * H - k * w1)
        upper = (k + 1) * w1t * H / ((epsilon - 1) * H + k * w1)
    out = (G >= lower) & (G <= upper)
    return bool(out) if np.ndim(out) == 0 else out


def boole_denominators(scenario: ProbScenario, omega2, epsilon):
    """The two denominators of :func:`boole_pair_event`, in order."""
    H = scenario.hess_f + np.asarray(omega2, dtype=float)
    k, w1 = scenario.kappa, scenario.omega1
    return (epsilon + 1) * H - k * w1, (epsilon - 1) * H + k * w1


def _grid_measures(scenario, m, cells, feasible_only):
    mid = (np.arange(cells) + 0.5) / cells
    w2 = m * scenario.omega1 * mid
    w2t = m * scenario.omega1_t * mid
    return contraction_measure(scenario, w2[:, None], w2t[None, :], feasible_only).ravel()


def _mc_measures(scenario, m, samples, seed, feasible_only):
    rng = np.random.default_rng(seed)
    w2 = rng.uniform(0.0, m * scenario.omega1, samples)
    w2t = rng.uniform(0.0, m * scenario.omega1_t, samples)
    return contraction_measure(scenario, w2, w2t, feasible_only)


def _fractions(measures, epsilons):
    ordered = np.sort(measures)
    counts = np.searchsorted(ordered, np.asarray(epsilons, dtype=float), side="right")
    return counts / ordered.size


def prob_grid(scenario: ProbScenario, m: float, epsilon: float,
              cells_per_axis: int = DEFAULT_CELLS, feasible_only: bool = False) -> float:
    """Midpoint-rule estimate of Prob(eps) on a ``cells_per_axis**2`` grid."""
    if cells_per_axis < 64:
        raise ValueError("cells_per_axis must be at least 64")
    if m <= 0:
        raise ValueError("m must be positive")
    measures = _grid_measures(scenario, m, cells_per_axis, feasible_only)
    return float(np.mean(measures <= epsilon))


def prob_mc(scenario: ProbScenario, m: float, epsilon: float,
            samples: int = DEFAULT_SAMPLES, seed: int = 0,
            feasible_only: bool = False) -> tuple[float, float]:
    """Monte Carlo estimate of Prob(eps) and its binomial standard error."""
    if samples < 10**4:
        raise ValueError("samples must be at least 10**4")
    if m <= 0:
        raise ValueError("m must be positive")
    measures = _mc_measures(scenario, m, samples, seed, feasible_only)
    p = float(np.mean(measures <= epsilon))
    return p, float(np.sqrt(p * (1 - p) / samples))


def default_epsilon_grid(points: int = 101) -> np.ndarray:
    return np.linspace(0.0, 1.0, points)


def sweep(scenario: ProbScenario, m_list, epsilon_grid, method: str = "grid",
          resolution: int | None = None, seed: int = 0,
          feasible_only: bool = False) -> list[ProbCurve]:
    """One Prob(eps) curve per region scale ``m``.

    Each curve reuses a single grid (or sample set) for every eps, so the
    curves are exactly nondecreasing in eps for both methods.
    """
    eps = np.asarray(epsilon_grid, dtype=float)
    if eps.size and (np.any(np.diff(eps) < 0) or eps[0] < 0 or eps[-1] > 1):
        raise ValueError("epsilon_grid must be sorted ascending within [0, 1]")
    if method not in ("grid", "monte_carlo"):
        raise ValueError(f"unknown method {method!r}")

    curves = []
    for m in m_list:
        if m <= 0:
            raise ValueError("m must be positive")
        if method == "grid":
            cells = resolution or DEFAULT_CELLS
            if cells < 64:
                raise ValueError("cells_per_axis must be at least 64")
            probs = _fractions(_grid_measures(scenario, m, cells, feasible_only), eps)
            stderr = np.zeros_like(probs)
        else:
            samples = resolution or DEFAULT_SAMPLES
            if samples < 10**4:
                raise ValueError("samples must be at least 10**4")
            probs = _fractions(_mc_measures(scenario, m, samples, seed, feasible_only), eps)
            stderr = np.sqrt(probs * (1 - probs) / samples)
        curves.append(ProbCurve(float(m), eps.copy(), probs, stderr, method))
    return curves
