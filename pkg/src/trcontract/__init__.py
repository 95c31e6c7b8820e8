"""Distance contraction between trust-region minimizers of two non-convex
diagonal quadratic models after two damped steps."""

from .analysis import (ConditionReport, KappaDiag, TwoStepTrace, analyze, check_theorem1,
                       check_theorem2, compute_kappa, difference_identity, min_epsilon_1d,
                       run_two_steps)
from .errors import *  # noqa: F401,F403
from .prob import (EXAMPLE2, ProbCurve, ProbScenario, boole_pair_event, contraction_event,
                   prob_grid, prob_mc, sweep)
from .quadratic import DampingSchedule, DiagQuadratic, damped_step, evaluate, gradient
from .trs import TrsSolution, brute_force_trs, solve_trs

__version__ = "0.1.0"
