"""Exception types shared across the library."""


class Z2LabError(Exception):
    """Base class for all library-specific errors."""


class NoConvergence(Z2LabError):
    """An iterative solver did not meet its residual target.

    Carries the best residual reached so the caller can distinguish
    "almost there" from "hopeless".
    """

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class PoleIndex(Z2LabError):
    """A matrix entry formula hit a pole (e.g. 1/(i+j+lambda) with i+j+lambda = 0)."""


class PrecisionLoss(Z2LabError):
    """A difference table lost more significant digits than allowed in double mode."""

    def __init__(self, message, digits_lost=None, n=None):
        super().__init__(message)
        self.digits_lost = digits_lost
        self.n = n


class ParameterOutOfRange(Z2LabError):
    """A constructor parameter violates its admissible range."""


class DisjointnessViolated(Z2LabError):
    """Block vectors that must be disjointly supported overlap."""


class SingularShift(Z2LabError):
    """A resolvent was requested exactly at an eigenvalue."""
