"""Exception hierarchy shared across the package."""


class Qdot2eError(Exception):
    """Base class for all package errors."""


class DomainError(Qdot2eError, ValueError):
    """Input outside the mathematical domain of an operation."""


class ConfigurationError(Qdot2eError, ValueError):
    """Inconsistent or unsupported configuration (cutoffs, orders, counts)."""


class AccuracyError(Qdot2eError, ArithmeticError):
    """A computation failed to reach its accuracy target.

    Carries the achieved error estimate in ``estimate``.
    """

    def __init__(self, message: str, estimate: float):
        super().__init__(f"{message} (error estimate {estimate:.3e})")
        self.estimate = estimate


class TruncationError(Qdot2eError, ArithmeticError):
    """A basis truncation captured too little of the state.

    Carries the captured norm in ``completeness``.
    """

    def __init__(self, message: str, completeness: float):
        super().__init__(f"{message} (completeness {completeness:.10f})")
        self.completeness = completeness


class DataError(Qdot2eError, ValueError):
    """Input data violates a structural assumption (symmetry, normalization)."""


class GridError(Qdot2eError, ValueError):
    """A discretization grid fails its coverage requirement."""
