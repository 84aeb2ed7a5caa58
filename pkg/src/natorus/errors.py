"""Exception hierarchy shared across the package."""


class NatorusError(Exception):
    """Base class for all package errors."""


class InvalidGroupError(NatorusError):
    """Raised for empty factor lists or factors below 2."""


class IncompatibleGroupsError(NatorusError):
    """Raised when an operation mixes elements of groups with different factors."""


class TensorShapeError(NatorusError):
    """Raised when a tensor or matrix does not match the group's rank."""


class CochainError(NatorusError):
    """Raised for malformed cochains: bad normalization, modulus, or arity."""


class NotACocycleError(CochainError):
    """Raised when an operation requires a cocycle and the input fails delta = 0.

    Carries the first failing argument tuple in ``witness`` when available.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class GradingError(NatorusError):
    """Raised when blocks fed to a graded element are not isotypic, or when
    an action fails to be a homomorphism by *-automorphisms.

    Carries the offending tuple in ``witness`` when available.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class TwistDataError(NatorusError):
    """Raised when (beta, u, phi) fail the crossed-product compatibility relations."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class BundleConstructionError(NatorusError):
    """Raised when bundle data cannot be realized (bad sigma, untrivializable phi)."""


class ConfigError(NatorusError):
    """Raised for malformed JSON configuration input (CLI exit code 2)."""
