"""Exception hierarchy shared across the package."""


class TrustRegionError(Exception):
    """Base class for every error raised by trcontract."""


class DimensionMismatch(TrustRegionError, ValueError):
    pass


class ShiftNotPositive(TrustRegionError, ValueError):
    """A shifted curvature ``hess_diag[i] + omega`` is not strictly positive."""


class NotNonconvex(TrustRegionError, ValueError):
    """A model that must have a negative curvature direction is convex."""


class NonFiniteInput(TrustRegionError, ValueError):
    pass


class NoConvergence(TrustRegionError, RuntimeError):
    """The secular iteration hit its cap.

    ``bracket`` holds the last multiplier interval known to contain the root.
    """

    def __init__(self, message, bracket):
        super().__init__(message)
        self.bracket = bracket


class DimensionTooLarge(TrustRegionError, ValueError):
    pass


class IdenticalMinimizers(TrustRegionError, ValueError):
    """The two first-step minimizers coincide, so no distance ratio exists."""


class KappaNonexistent(TrustRegionError, ValueError):
    """No diagonal scaling maps ``x1_t - x1`` onto ``x1 - x0``."""


class NotOneDimensional(TrustRegionError, ValueError):
    pass


class ProblemParseError(TrustRegionError, ValueError):
    pass


class ProblemValidationError(TrustRegionError, ValueError):
    pass
