"""Exception hierarchy shared by every module."""


class BesselProdError(Exception):
    """Base class for all errors raised by the package."""


class DomainError(BesselProdError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class UnsupportedOrderError(DomainError):
    """The order is valid mathematically but outside the supported kernel range."""


class PoleError(DomainError):
    """Evaluation at a pole (e.g. the gamma function at a non-positive integer)."""


class ConvergenceError(BesselProdError, ArithmeticError):
    """An iterative method did not converge.

    ``best`` holds the best available estimate (an ``EvalResult``) or ``None``.
    """

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class IntegrandError(BesselProdError, ArithmeticError):
    """The integrand returned a non-finite value."""


class UsageError(BesselProdError, ValueError):
    """Malformed request: empty grid, bad interval, wrong grid spacing..."""


class BracketError(BesselProdError):
    """An initial bracket failed its sign conditions."""

    def __init__(self, message, evidence=None):
        super().__init__(message)
        self.evidence = evidence or {}
