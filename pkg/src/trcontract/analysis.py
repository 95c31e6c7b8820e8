"""Two damped steps on a pair of models and the distance-contraction tests.

Both models start from ``x0``.  Model f takes steps with multipliers
``omega1, omega2`` and model Q with ``omega1_t, omega2_t``.  The question is
whether ``||x2_t - x2|| <= eps * ||x1_t - x1||``.

Per coordinate, with ``G = hess_Q + omega2_t``, ``H = hess_f + omega2`` and
``kappa = (x1 - x0) / (x1_t - x1)``, the second-step gap is the first-step gap
scaled by ``1 + omega1_t (1 + kappa) / G - omega1 kappa / H``.  Its absolute
value is the contraction factor of that coordinate.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (DimensionMismatch, IdenticalMinimizers, KappaNonexistent,
                     NotNonconvex, NotOneDimensional, ShiftNotPositive)
from .quadratic import DampingSchedule, DiagQuadratic, damped_step, shifted_curvature

#: absolute slack on every <= / >= in the condition checks
BOUNDARY_TOL = 1e-9

EQ4 = "Eq4"
EQ5 = "Eq5"
DEGENERATE = "degenerate"


@dataclass(frozen=True)
class TwoStepTrace:
    x0: np.ndarray
    x1: np.ndarray
    x1_t: np.ndarray
    x2: np.ndarray
    x2_t: np.ndarray
    delta1: float
    delta1_t: float
    delta2: float
    delta2_t: float

    @property
    def first_gap(self) -> float:
        return float(np.linalg.norm(self.x1_t - self.x1))

    @property
    def second_gap(self) -> float:
        return float(np.linalg.norm(self.x2_t - self.x2))

    @property
    def observed_ratio(self) -> float:
        gap = self.first_gap
        if gap == 0:
            raise IdenticalMinimizers("x1_t equals x1; the distance ratio is undefined")
        return self.second_gap / gap


@dataclass(frozen=True)
class KappaDiag:
    values: np.ndarray
    defined_mask: np.ndarray


@dataclass(frozen=True)
class CoordinateCheck:
    i: int
    G: float
    H: float
    kappa: float
    kappa1: float
    kappa2: float
    branch: str
    satisfied: bool
    factor: float


@dataclass(frozen=True)
class ConditionReport:
    epsilon: float
    per_coord: list[CoordinateCheck]
    theorem_satisfied: bool
    min_epsilon: float
    observed_ratio: float | None = None

    def to_dict(self) -> dict:
        def clean(v):
            return None if isinstance(v, float) and not np.isfinite(v) else v

        return {
            "epsilon": self.epsilon,
            "theorem_satisfied": self.theorem_satisfied,
            "min_epsilon": self.min_epsilon,
            "observed_ratio": self.observed_ratio,
            "per_coord": [
                {k: clean(v) for k, v in vars(c).items()} for c in self.per_coord
            ],
        }


def _require_pair(f: DiagQuadratic, Q: DiagQuadratic):
    if f.dim != Q.dim:
        raise DimensionMismatch(f"f has dim {f.dim}, Q has dim {Q.dim}")
    for name, model in (("f", f), ("Q", Q)):
        if not model.is_nonconvex:
            raise NotNonconvex(f"model {name} has no negative curvature")


def run_two_steps(f: DiagQuadratic, Q: DiagQuadratic, x0,
                  sched: DampingSchedule) -> TwoStepTrace:
    _require_pair(f, Q)
    x0 = np.asarray(x0, dtype=float).reshape(-1)
    x1 = damped_step(f, x0, sched.omega1)
    x1_t = damped_step(Q, x0, sched.omega1_t)
    x2 = damped_step(f, x1, sched.omega2)
    x2_t = damped_step(Q, x1_t, sched.omega2_t)
    norm = np.linalg.norm
    return TwoStepTrace(
        x0=x0, x1=x1, x1_t=x1_t, x2=x2, x2_t=x2_t,
        delta1=float(norm(x1 - x0)),
        delta1_t=float(norm(x1_t - x0)),
        delta2=float(norm(x2 - x1)),
        # measured from x1_t, the centre of Q's second trust region
        delta2_t=float(norm(x2_t - x1_t)),
    )


def difference_identity(f: DiagQuadratic, Q: DiagQuadratic, trace: TwoStepTrace,
                        sched: DampingSchedule) -> np.ndarray:
    """``x2_t - x2`` rebuilt from first-step displacements only."""
    G = shifted_curvature(Q, sched.omega2_t)
    H = shifted_curvature(f, sched.omega2)
    return (sched.omega1_t * (trace.x1_t - trace.x0) / G
            - sched.omega1 * (trace.x1 - trace.x0) / H
            + (trace.x1_t - trace.x1))


def compute_kappa(trace: TwoStepTrace) -> KappaDiag:
    num = trace.x1 - trace.x0
    den = trace.x1_t - trace.x1
    if not np.any(den != 0):
        raise IdenticalMinimizers("x1_t equals x1")
    bad = (den == 0) & (num != 0)
    if np.any(bad):
        raise KappaNonexistent(
            f"coordinates {np.flatnonzero(bad).tolist()} have x1_t == x1 but x1 != x0")
    defined = den != 0
    values = np.full(num.shape, np.nan)
    values[defined] = num[defined] / den[defined]
    return KappaDiag(values, defined)


def contraction_factor(G, H, omega1, omega1_t, kappa):
    """Signed per-coordinate ratio ``(x2_t - x2)[i] / (x1_t - x1)[i]``."""
    return 1.0 + omega1_t * (1.0 + kappa) / G - omega1 * kappa / H


def min_epsilon_1d(G: float, H: float, omega1: float, omega1_t: float,
                   kappa: float) -> float:
    """Smallest eps for which one coordinate contracts by eps.

    ``G`` and ``H`` are the shifted second-step curvatures of Q and f.
    """
    if G <= 0 or H <= 0:
        raise ShiftNotPositive("shifted curvatures G and H must be positive")
    if omega1 <= 0 or omega1_t <= 0:
        raise ShiftNotPositive("first-step multipliers must be positive")
    return float(abs(contraction_factor(G, H, omega1, omega1_t, kappa)))


def kappa_bounds(G, H, omega1, omega1_t, epsilon):
    """Window ends ``(kappa1, kappa2)`` and the denominator that orders them.

    The coordinate contracts by ``epsilon`` iff kappa lies between the two
    ends; ``kappa1 <= kappa2`` exactly when the denominator is positive.
    """
    G, H = np.asarray(G, dtype=float), np.asarray(H, dtype=float)
    denom = G * omega1 - H * omega1_t
    with np.errstate(divide="ignore", invalid="ignore"):
        kappa1 = H * ((1 - epsilon) * G + omega1_t) / denom
        kappa2 = H * ((1 + epsilon) * G + omega1_t) / denom
    return kappa1, kappa2, denom


def _check_coordinate(i, G, H, omega1, omega1_t, kappa, epsilon) -> CoordinateCheck:
    kappa1, kappa2, denom = kappa_bounds(G, H, omega1, omega1_t, epsilon)
    factor = abs(contraction_factor(G, H, omega1, omega1_t, kappa))
    if denom > 0:
        branch = EQ4
        ok = kappa1 - BOUNDARY_TOL <= kappa <= kappa2 + BOUNDARY_TOL
    elif denom < 0:
        branch = EQ5
        ok = kappa2 - BOUNDARY_TOL <= kappa <= kappa1 + BOUNDARY_TOL
    else:
        branch = DEGENERATE
        kappa1 = kappa2 = float("nan")
        ok = factor <= epsilon + BOUNDARY_TOL
    return CoordinateCheck(i, float(G), float(H), float(kappa), float(kappa1),
                           float(kappa2), branch, bool(ok), float(factor))


def _check_epsilon(epsilon):
    if not 0 <= epsilon <= 1:
        raise ValueError(f"epsilon must lie in [0, 1], got {epsilon}")
    return float(epsilon)


def check_theorem1(f: DiagQuadratic, Q: DiagQuadratic, sched: DampingSchedule,
                   kappa: float, epsilon: float,
                   trace: TwoStepTrace | None = None) -> ConditionReport:
    """Necessary and sufficient contraction test for one-dimensional models.

    When ``trace`` is supplied the report also carries the ratio actually
    realized by the iterates.
    """
    if f.dim != 1 or Q.dim != 1:
        raise NotOneDimensional("check_theorem1 needs one-dimensional models")
    _require_pair(f, Q)
    epsilon = _check_epsilon(epsilon)
    G = float(shifted_curvature(Q, sched.omega2_t)[0])
    H = float(shifted_curvature(f, sched.omega2)[0])
    coord = _check_coordinate(0, G, H, sched.omega1, sched.omega1_t, float(kappa), epsilon)
    observed = trace.observed_ratio if trace is not None else None
    return ConditionReport(epsilon, [coord], coord.satisfied, coord.factor, observed)


def check_theorem2(f: DiagQuadratic, Q: DiagQuadratic, sched: DampingSchedule,
                   kappa: KappaDiag, epsilon: float,
                   trace: TwoStepTrace | None = None) -> ConditionReport:
    """Coordinatewise sufficient contraction test for diagonal models.

    A passing verdict guarantees contraction; a failing one does not rule
    it out.  Coordinates with undefined kappa (no displacement at all) are
    counted as satisfied and left out of ``min_epsilon``.
    """
    _require_pair(f, Q)
    epsilon = _check_epsilon(epsilon)
    G = shifted_curvature(Q, sched.omega2_t)
    H = shifted_curvature(f, sched.omega2)
    coords = []
    for i in range(f.dim):
        if kappa.defined_mask[i]:
            coords.append(_check_coordinate(i, G[i], H[i], sched.omega1, sched.omega1_t,
                                            float(kappa.values[i]), epsilon))
        else:
            nan = float("nan")
            coords.append(CoordinateCheck(i, float(G[i]), float(H[i]), nan, nan, nan,
                                          DEGENERATE, True, 0.0))
    min_eps = max((c.factor for c in coords), default=0.0)
    observed = trace.observed_ratio if trace is not None else None
    return ConditionReport(epsilon, coords, all(c.satisfied for c in coords),
                           float(min_eps), observed)


@dataclass(frozen=True)
class Analysis:
    trace: TwoStepTrace
    kappa: KappaDiag
    report: ConditionReport
    difference: np.ndarray = field(repr=False)


def analyze(f: DiagQuadratic, Q: DiagQuadratic, x0, sched: DampingSchedule,
            epsilon: float) -> Analysis:
    """Run both steps, extract kappa and apply the matching theorem."""
    trace = run_two_steps(f, Q, x0, sched)
    kappa = compute_kappa(trace)
    if f.dim == 1:
        report = check_theorem1(f, Q, sched, kappa.values[0], epsilon, trace)
    else:
        report = check_theorem2(f, Q, sched, kappa, epsilon, trace)
    return Analysis(trace, kappa, report, difference_identity(f, Q, trace, sched))
