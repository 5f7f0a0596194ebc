"""Exception types shared across the package."""


class QlabError(Exception):
    """Base class for all package-specific errors."""


class DimensionMismatch(QlabError, ValueError):
    """A point or array does not match the spec dimension."""


class MomentUnavailable(QlabError, ValueError):
    """The requested absolute moment diverges for this distribution."""


class BoundedSupport(QlabError, ValueError):
    """Tail machinery was requested for a compactly supported distribution."""


class UnsupportedFamily(QlabError, ValueError):
    """The operation has no implementation for this distribution family."""


class UnsupportedStrategy(QlabError, ValueError):
    """The initialization strategy does not apply in this dimension."""


class DomainError(QlabError, ValueError):
    """Argument outside the mathematical domain of a kernel."""


class NotSorted(QlabError, ValueError):
    """A 1-d point list must be strictly increasing."""


class EmptyCodebook(QlabError, ValueError):
    """An operation received a codebook with no points."""


class MixedSpecs(QlabError, ValueError):
    """Codebooks from different specs or orders were mixed in one series."""


class InsufficientData(QlabError, ValueError):
    """Not enough series entries inside the regression window."""


class NuOutOfRange(QlabError, ValueError):
    """The moment-gap parameter must lie strictly below the critical index."""


class NonConvergence(QlabError, RuntimeError):
    """An iterative numerical routine failed to reach its tolerance."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class MaxIterations(NonConvergence):
    """A fixed-point iteration hit its iteration cap; carries the residual."""


class EmptyCell(QlabError, RuntimeError):
    """A quantizer cell carries (numerically) zero probability mass."""


class OrientationMismatch(QlabError, RuntimeError):
    """The product-form grid disagrees with the direct stationarity solve.

    Raised when no reading of the recursive grid assembly reproduces the
    fixed-point oracle at small levels; signals a formula-interpretation bug
    rather than a numerical accident.
    """
