"""Exception hierarchy shared by all modules."""


class EpsteinError(Exception):
    """Base class for library errors."""


class DomainError(EpsteinError, ValueError):
    """An argument lies outside the domain where the operation is defined."""


class SingularMapError(EpsteinError, ZeroDivisionError):
    """A Moebius or analytic map degenerates at the requested point."""


class PreconditionError(EpsteinError, ValueError):
    """Inputs violate a stated precondition (orthogonality, norms, ...)."""


class NotADiffeomorphismError(EpsteinError, ValueError):
    """A lift is not strictly increasing or has the wrong degree."""


class NormalizationError(EpsteinError, ValueError):
    """A boundary metric does not have total length 2*pi."""


class InconsistentObservablesError(EpsteinError, ValueError):
    """Edge observables cannot come from a single diffeomorphism."""

    def __init__(self, message, triangle=None, residual=None):
        super().__init__(message)
        self.triangle = triangle
        self.residual = residual


class ClosureError(EpsteinError, RuntimeError):
    """Newton iteration for the piecewise closure condition did not converge."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class ConvergenceError(EpsteinError, RuntimeError):
    """An extrapolated sequence failed to settle."""


class ExcludedRangeError(EpsteinError, ValueError):
    """Requested parameter lies in a range where the quantity is undefined."""


class ResourceError(EpsteinError, RuntimeError):
    """Requested size exceeds a configured cap."""


class DescriptorError(EpsteinError, ValueError):
    """A JSON descriptor is malformed."""
