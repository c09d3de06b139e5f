"""Exception hierarchy. Each class carries a short ``tag`` used by the CLI."""


class FracLapError(Exception):
    tag = "error"


class DomainError(FracLapError, ValueError):
    tag = "domain"


class PoleError(DomainError):
    tag = "pole"


class BranchError(FracLapError, ValueError):
    """Raised when the generic formula is requested too close to s = 1/2."""

    tag = "branch"


class IndexOutOfRange(FracLapError, IndexError):
    tag = "index"


class ConvergenceError(FracLapError, RuntimeError):
    tag = "convergence"


class FactorizationError(FracLapError, ArithmeticError):
    """Cholesky met a non-positive pivot (positive definiteness lost)."""

    tag = "factorization"


class NotPositiveDefinite(FracLapError, ArithmeticError):
    tag = "not-positive-definite"


class DegenerateFit(FracLapError, ValueError):
    tag = "degenerate-fit"
