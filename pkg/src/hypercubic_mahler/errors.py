"""Exception hierarchy shared by every evaluator in the package."""


class MahlerError(Exception):
    """Base class for all package errors."""


class DomainError(MahlerError, ValueError):
    """An argument lies outside the region where the quantity is defined."""


class Divergent(MahlerError, ArithmeticError):
    """A hypergeometric series fails its convergence criterion."""


class BudgetExceeded(MahlerError, RuntimeError):
    """A term or evaluation budget ran out before the tolerance was met.

    The best estimate available at the point of failure is kept on the
    exception so callers can decide whether it is good enough.
    """

    def __init__(self, message, best=None, error_estimate=None):
        super().__init__(message)
        self.best = best
        self.error_estimate = error_estimate


class NonFinite(MahlerError, ArithmeticError):
    """An integrand returned NaN or infinity at an interior node."""


class TailNotIntegrable(MahlerError, ValueError):
    """A tail envelope does not decay fast enough to be integrable."""


class NoCandidateMatches(MahlerError):
    """None of the candidate readings of a misprinted formula matched its oracle.

    ``evidence`` maps each candidate name to a list of ``(z, candidate, oracle)``
    triples so the mismatch can be reported rather than hidden.
    """

    def __init__(self, message, evidence=None):
        super().__init__(message)
        self.evidence = evidence or {}


class ContinuationUnresolved(MahlerError):
    """An analytic continuation could not be pinned to a single real value."""

    def __init__(self, message, value=None):
        super().__init__(message)
        self.value = value


class UnknownIdentity(MahlerError, KeyError):
    """The requested identity is not part of the verification catalogue."""
