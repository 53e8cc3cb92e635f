"""Exception and warning types shared across the package."""


class StratwaveError(Exception):
    """Base class for errors raised by this package."""


class InvalidProfileError(StratwaveError, ValueError):
    """A profile or geometry violates its structural assumptions."""


class BranchCutError(StratwaveError, ValueError):
    """A spectral parameter sits on a square-root branch cut."""


class SpectralDomainError(StratwaveError, ValueError):
    """A spectral parameter is outside the domain of the requested quantity."""


class ResonancePoleError(StratwaveError, ArithmeticError):
    """The Robin system is singular: the spectral parameter is a resonance."""

    def __init__(self, message, determinant):
        super().__init__(message)
        self.determinant = determinant


class ConvergenceError(StratwaveError, RuntimeError):
    """An iterative search did not converge."""

    def __init__(self, message, data=None):
        super().__init__(message)
        self.data = data


class InvalidDensityError(StratwaveError, ValueError):
    """A spectral density does not describe a valid half-plane field."""


class InvalidTraceError(StratwaveError, ValueError):
    """A trace cannot be the trace of an L2 Helmholtz solution."""


class TruncationWarning(UserWarning):
    """A function does not decay inside its declared window."""


class InvalidTraceWarning(UserWarning):
    """Spectral leakage exceeds the threshold for a valid half-plane trace."""


class NearPoleWarning(UserWarning):
    """A spectral parameter is close to a singular curve of a transfer kernel."""


class NotApplicableError(StratwaveError, ValueError):
    """A criterion was requested outside the setting where it is defined."""
