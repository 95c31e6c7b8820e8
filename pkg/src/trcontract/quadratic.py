"""Diagonal-Hessian quadratic models and damped Newton steps.

A model is stored in canonical form

    q(x) = 1/2 * sum_i h[i] * x[i]**2 + b @ x + c

with ``h = hess_diag``, ``b = lin`` and ``c = offset``.  A model written as
``-1/2 x^T A x + b^T x`` therefore has ``hess_diag = -diag(A)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NonFiniteInput, ShiftNotPositive


def _as_vector(values, name: str) -> np.ndarray:
    arr = np.array(values, dtype=float).reshape(-1)
    if not np.all(np.isfinite(arr)):
        raise NonFiniteInput(f"{name} contains non-finite entries")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class DiagQuadratic:
    """Quadratic function with a diagonal Hessian.

    Parameters
    ----------
    hess_diag : array_like
        Diagonal of the Hessian.
    lin : array_like
        Linear coefficient.
    offset : float
        Constant term.
    """

    hess_diag: np.ndarray
    lin: np.ndarray
    offset: float = 0.0

    def __post_init__(self):
        h = _as_vector(self.hess_diag, "hess_diag")
        b = _as_vector(self.lin, "lin")
        if h.size == 0:
            raise DimensionMismatch("a quadratic needs at least one variable")
        if h.shape != b.shape:
            raise DimensionMismatch(
                f"hess_diag has {h.size} entries but lin has {b.size}")
        if not np.isfinite(self.offset):
            raise NonFiniteInput("offset must be finite")
        object.__setattr__(self, "hess_diag", h)
        object.__setattr__(self, "lin", b)
        object.__setattr__(self, "offset", float(self.offset))

    @property
    def dim(self) -> int:
        return self.hess_diag.size

    @property
    def is_nonconvex(self) -> bool:
        return bool(self.hess_diag.min() < 0)

    def __call__(self, x) -> float:
        return evaluate(self, x)

    def __eq__(self, other):
        if not isinstance(other, DiagQuadratic):
            return NotImplemented
        return (np.array_equal(self.hess_diag, other.hess_diag)
                and np.array_equal(self.lin, other.lin)
                and self.offset == other.offset)

    def __hash__(self):
        return hash((self.hess_diag.tobytes(), self.lin.tobytes(), self.offset))


@dataclass(frozen=True)
class DampingSchedule:
    """The four multipliers of the two damped steps on models f and Q.

    ``omega1``/``omega2`` shift the Hessian of f on the first/second step,
    ``omega1_t``/``omega2_t`` do the same for Q.
    """

    omega1: float
    omega1_t: float
    omega2: float
    omega2_t: float

    def __post_init__(self):
        for name in ("omega1", "omega1_t", "omega2", "omega2_t"):
            value = float(getattr(self, name))
            if not np.isfinite(value) or value <= 0:
                raise ShiftNotPositive(f"{name} must be a positive finite number, got {value}")
            object.__setattr__(self, name, value)

    def feasibility_violations(self, f: DiagQuadratic, Q: DiagQuadratic) -> list[str]:
        """List every shift condition the pair (f, Q) violates.

        First-step shifts need only be positive semidefinite; second-step
        shifts must be positive definite.
        """
        problems = []
        checks = [
            ("f", f, "omega1", self.omega1, False),
            ("Q", Q, "omega1_t", self.omega1_t, False),
            ("f", f, "omega2", self.omega2, True),
            ("Q", Q, "omega2_t", self.omega2_t, True),
        ]
        for model_name, model, name, omega, strict in checks:
            shifted = model.hess_diag + omega
            bad = shifted <= 0 if strict else shifted < 0
            if np.any(bad):
                i = int(np.flatnonzero(bad)[0])
                op = ">" if strict else ">="
                problems.append(
                    f"hess_diag_{model_name}[{i}] + {name} = {shifted[i]:g} is not {op} 0")
        return problems

    def is_feasible_for(self, f: DiagQuadratic, Q: DiagQuadratic) -> bool:
        return not self.feasibility_violations(f, Q)


def _check_point(q: DiagQuadratic, x) -> np.ndarray:
    x = np.asarray(x, dtype=float).reshape(-1)
    if x.size != q.dim:
        raise DimensionMismatch(f"point has {x.size} entries, model has dim {q.dim}")
    return x


def evaluate(q: DiagQuadratic, x) -> float:
    x = _check_point(q, x)
    return float(0.5 * np.dot(q.hess_diag * x, x) + np.dot(q.lin, x) + q.offset)


def gradient(q: DiagQuadratic, x) -> np.ndarray:
    x = _check_point(q, x)
    return q.hess_diag * x + q.lin


def shifted_curvature(q: DiagQuadratic, omega: float) -> np.ndarray:
    """Diagonal of ``hess + omega * I``, raising if any entry is not positive."""
    shifted = q.hess_diag + omega
    if np.any(shifted <= 0):
        i = int(np.argmin(shifted))
        raise ShiftNotPositive(
            f"hess_diag[{i}] + omega = {shifted[i]:g} must be positive")
    return shifted


def damped_step(q: DiagQuadratic, x, omega: float) -> np.ndarray:
    """Return ``x - (diag(hess) + omega I)^{-1} grad q(x)``.

    This is the stationary point of the trust-region subproblem centred at
    ``x`` whose multiplier is ``omega``.

    Raises
    ------
    ShiftNotPositive
        If some ``hess_diag[i] + omega <= 0``; the shifted Hessian must be
        invertible, including at the semidefinite boundary.
    """
    x = _check_point(q, x)
    return x - gradient(q, x) / shifted_curvature(q, omega)
