"""Exception hierarchy shared by the qosc modules."""


class QoscError(Exception):
    """Base class for all library errors."""


class DomainError(QoscError, ValueError):
    """An argument lies outside the region where a quantity is defined."""


class RootOfUnityError(DomainError):
    """The deformation parameter is (numerically) a root of unity."""


class NoRealRootsError(DomainError):
    """The characteristic equation for the radial exponent has no real root."""


class HarmonicUndefinedError(DomainError):
    """The q-spherical harmonic normalization is not real at this w."""


class QuadratureError(QoscError, RuntimeError):
    """Adaptive quadrature failed to reach the requested tolerance."""

    def __init__(self, message, value=None, error=None):
        super().__init__(message)
        self.value = value
        self.error = error
