"""Problem-file parsing and CSV output."""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, fields
from importlib import resources
from pathlib import Path

import numpy as np

from .errors import ProblemParseError, ProblemValidationError, ShiftNotPositive
from .prob import ProbCurve, ProbScenario
from .quadratic import DampingSchedule, DiagQuadratic

VECTOR_FIELDS = ("f_hess_diag", "f_lin", "q_hess_diag", "q_lin", "x0")
CSV_HEADER = "m,epsilon,prob,stderr,method"


@dataclass(frozen=True)
class ProblemFile:
    dim: int
    f_hess_diag: tuple[float, ...]
    f_lin: tuple[float, ...]
    f_offset: float
    q_hess_diag: tuple[float, ...]
    q_lin: tuple[float, ...]
    q_offset: float
    x0: tuple[float, ...]
    omega1: float
    omega1_t: float
    omega2: float
    omega2_t: float
    epsilon: float

    @property
    def f(self) -> DiagQuadratic:
        return DiagQuadratic(self.f_hess_diag, self.f_lin, self.f_offset)

    @property
    def Q(self) -> DiagQuadratic:
        return DiagQuadratic(self.q_hess_diag, self.q_lin, self.q_offset)

    @property
    def schedule(self) -> DampingSchedule:
        return DampingSchedule(self.omega1, self.omega1_t, self.omega2, self.omega2_t)

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2) + "\n"


def _is_number(v) -> bool:
    return isinstance(v, (int, float)) and not isinstance(v, bool)


def _load_object(text: str, source: str, expected: set[str]) -> dict:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProblemParseError(
            f"{source}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(data, dict):
        raise ProblemParseError(f"{source}: top level must be a JSON object")
    unknown = sorted(set(data) - expected)
    if unknown:
        raise ProblemParseError(f"{source}: unknown field(s) {unknown}")
    missing = sorted(expected - set(data))
    if missing:
        raise ProblemParseError(f"{source}: missing field(s) {missing}")
    return data


def problem_from_text(text: str, source: str = "<string>") -> ProblemFile:
    names = {f.name for f in fields(ProblemFile)}
    data = _load_object(text, source, names)

    values = {}
    for name in names:
        v = data[name]
        if name in VECTOR_FIELDS:
            if not isinstance(v, list) or not all(_is_number(e) for e in v):
                raise ProblemParseError(f"{source}: field {name!r} must be a list of numbers")
            values[name] = tuple(float(e) for e in v)
        elif name == "dim":
            if not isinstance(v, int) or isinstance(v, bool):
                raise ProblemParseError(f"{source}: field 'dim' must be an integer")
            values[name] = v
        else:
            if not _is_number(v):
                raise ProblemParseError(f"{source}: field {name!r} must be a number")
            values[name] = float(v)

    problem = ProblemFile(**values)
    validate_problem(problem, source)
    return problem


def validate_problem(p: ProblemFile, source: str = "<problem>") -> None:
    if p.dim < 1:
        raise ProblemValidationError(f"{source}: dim must be at least 1")
    for name in VECTOR_FIELDS:
        vec = getattr(p, name)
        if len(vec) != p.dim:
            raise ProblemValidationError(
                f"{source}: {name} has {len(vec)} entries, expected dim = {p.dim}")
        if not all(math.isfinite(e) for e in vec):
            raise ProblemValidationError(f"{source}: {name} has non-finite entries")
    if not 0 <= p.epsilon <= 1:
        raise ProblemValidationError(f"{source}: epsilon must lie in [0, 1]")
    try:
        sched = p.schedule
    except ShiftNotPositive as exc:
        raise ProblemValidationError(f"{source}: {exc}") from None
    problems = sched.feasibility_violations(p.f, p.Q)
    if problems:
        raise ProblemValidationError(f"{source}: infeasible schedule: " + "; ".join(problems))


def parse_problem(path) -> ProblemFile:
    path = Path(path)
    return problem_from_text(path.read_text(encoding="utf-8"), str(path))


def example1_path():
    return resources.files("trcontract").joinpath("data/example1.json")


def load_example1() -> ProblemFile:
    return problem_from_text(example1_path().read_text(encoding="utf-8"), "example1.json")


def parse_scenario(path) -> ProbScenario:
    path = Path(path)
    names = {f.name for f in fields(ProbScenario)}
    data = _load_object(path.read_text(encoding="utf-8"), str(path), names)
    for name in names:
        if not _is_number(data[name]):
            raise ProblemParseError(f"{path}: field {name!r} must be a number")
    try:
        return ProbScenario(**{k: float(v) for k, v in data.items()})
    except ValueError as exc:
        raise ProblemValidationError(f"{path}: {exc}") from None


def _fmt(x: float) -> str:
    return format(float(x), ".12g")


def format_csv(curves: list[ProbCurve]) -> str:
    """Curves as ``m,epsilon,prob,stderr,method`` rows, m then eps ascending."""
    lines = [CSV_HEADER]
    for curve in sorted(curves, key=lambda c: c.m):
        order = np.argsort(curve.epsilons, kind="stable")
        for j in order:
            lines.append(",".join([_fmt(curve.m), _fmt(curve.epsilons[j]),
                                   _fmt(curve.probs[j]), _fmt(curve.stderr[j]),
                                   curve.method]))
    return "\n".join(lines) + "\n"


def write_csv(curves: list[ProbCurve], path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_csv(curves))
