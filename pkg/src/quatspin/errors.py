"""Exception types shared across the package."""


class QuatspinError(Exception):
    """Base class for all package errors."""


class DimensionError(QuatspinError, ValueError):
    """Matrix/vector shapes are incompatible with the requested operation."""


class DomainError(QuatspinError, ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class SpectrumError(QuatspinError, ArithmeticError):
    """A stated spectrum failed exact (or tolerance) projector certification."""


class IdentityFailure(QuatspinError, ArithmeticError):
    """An operator identity that must hold exactly produced a nonzero residual."""


class ResourceLimitError(QuatspinError, RuntimeError):
    """A model was requested beyond the configured size cap."""
