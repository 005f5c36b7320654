"""Exception and warning types shared across the library."""


class PoleSignal(ArithmeticError):
    """An evaluation landed on a pole of a meromorphic quantity.

    Carries the pole location (``at``), its order, and, for simple poles,
    the residue when the caller computed one.
    """

    def __init__(self, message, at=None, order=1, residue=None):
        super().__init__(message)
        self.at = at
        self.order = order
        self.residue = residue


class ResonantExponentError(ValueError):
    """Degenerate Frobenius data: 2*lambda hit the excluded integer set."""


class IllConditionedError(RuntimeError):
    """A linear solve was rejected because its condition number is too large."""

    def __init__(self, message, condition=None):
        super().__init__(message)
        self.condition = condition


class DominanceError(ValueError):
    """The leading boundary exponent does not dominate, so a direct limit
    cannot converge (use the connection-solver route instead)."""


class StiffnessError(RuntimeError):
    """The adaptive ODE integrator failed to reach the end of the interval."""


class QuadratureError(RuntimeError):
    """An adaptive quadrature did not converge within its node budget."""


class IndeterminateRankError(RuntimeError):
    """Singular values near the rank threshold are too close to call."""

    def __init__(self, message, gap=None):
        super().__init__(message)
        self.gap = gap


class NormalizationError(RuntimeError):
    """A solution could not be normalized (the normalizing coefficient
    vanishes)."""


class EnumerationError(RuntimeError):
    """A seeded root search failed to certify its zero.  The seeds are exact
    for the implemented c-functions, so this indicates a defect upstream."""


class AccuracyWarning(UserWarning):
    """An extrapolation or quadrature met its formal stopping rule but the
    internal error estimate is larger than the requested tolerance."""
