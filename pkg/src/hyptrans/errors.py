"""Exception types shared across the package."""


class HyptransError(Exception):
    """Base class for all package-specific errors."""


class PoleError(HyptransError):
    """A gamma-function argument (or series parameter) sits on a pole."""


class ConvergenceError(HyptransError):
    """A series failed to converge within the term budget."""


class ConstraintError(HyptransError):
    """A parameter constraint required by a formula is violated."""


class DomainError(HyptransError):
    """An evaluation point lies outside the admissible domain."""


class NonIntegrableError(HyptransError):
    """Declared endpoint behavior is not integrable."""


class NoConvergenceError(HyptransError):
    """Quadrature error estimate stayed above tolerance at the maximum level.

    Carries the best estimate so callers can still inspect it.
    """

    def __init__(self, message, value=None, err_est=None):
        super().__init__(message)
        self.value = value
        self.err_est = err_est


class SamplerExhaustedError(HyptransError):
    """Rejection sampling failed to find an admissible point."""


class UnknownIdentityError(HyptransError):
    """Identity id not present in the catalog."""


class UnknownCaseError(HyptransError):
    """Transmutation case name not in the eight-row table."""
