"""Exception hierarchy shared by every evaluator in the package."""


class QPsiError(Exception):
    """Base class for evaluation failures."""


class DomainError(QPsiError, ValueError):
    """An argument lies outside the domain of the function."""


class PoleError(QPsiError, ArithmeticError):
    """A denominator factor vanishes (to within ``pole_eps``) on the evaluation set."""

    def __init__(self, message, *, site=None):
        super().__init__(message)
        self.site = site


class ConvergenceError(QPsiError, ArithmeticError):
    """A series or lattice sum failed to converge within the policy budget."""

    def __init__(self, message, *, history=None, index=None):
        super().__init__(message)
        self.history = tuple(history) if history is not None else ()
        self.index = index


class DivisionError(QPsiError, ZeroDivisionError):
    """A normalising quantity is too close to zero to divide by."""


class QuadratureError(QPsiError, ArithmeticError):
    """Numerical quadrature could not reach the requested tolerance."""
