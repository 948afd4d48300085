"""Exception types shared across the package."""


class GhaError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(GhaError, ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class NoPhysicalRoot(GhaError, ArithmeticError):
    """A gap equation has no positive real root in the searched range."""


class PhaseUnavailable(GhaError):
    """The requested quantum phase does not exist for these parameters."""


class NonConvergence(GhaError, ArithmeticError):
    """An iterative routine failed to converge within its iteration cap."""


class BudgetExceeded(GhaError):
    """An adaptive computation hit its resource cap before converging."""


class NoRoot(GhaError, ArithmeticError):
    """A scalar equation turned out to have no root (defensive check)."""
