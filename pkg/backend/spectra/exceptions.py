class GelfandError(Exception):
    """Base class for errors raised by the spectra package."""


class DomainError(GelfandError, ValueError):
    """An argument lies outside the admissible range (tau, x, alpha, ...)."""


class PreconditionError(GelfandError, ValueError):
    """A documented precondition of an operation does not hold."""


class BracketError(GelfandError):
    """A root bracket shows no sign change."""

    def __init__(self, message, lo=None, hi=None, f_lo=None, f_hi=None):
        super().__init__(message)
        self.lo = lo
        self.hi = hi
        self.f_lo = f_lo
        self.f_hi = f_hi


class QuadratureError(GelfandError):
    """Adaptive quadrature hit its depth cap without meeting the tolerance."""
