"""Exception and warning types raised across the package."""


class XhermError(ValueError):
    """Base class for domain errors."""


class GapSequenceError(XhermError):
    """Index lies in the excluded (gap) set of the exceptional family."""


class SingularPointError(XhermError):
    """Evaluation requested at a singular point such as z = +-i/sqrt(2)."""


class QuadratureError(RuntimeError):
    """Adaptive quadrature failed to reach its tolerance."""

    def __init__(self, message, estimates=None):
        super().__init__(message)
        self.estimates = estimates


class ConvergenceError(RuntimeError):
    """A series did not converge within its term budget."""

    def __init__(self, message, tail_estimate=None):
        super().__init__(message)
        self.tail_estimate = tail_estimate


class PrecisionWarning(RuntimeWarning):
    """Result is computed but expected to have degraded relative accuracy."""
