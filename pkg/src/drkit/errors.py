"""Exception hierarchy."""


class DRKitError(Exception):
    """Base class for all errors raised by drkit."""


class UnsupportedDimensionError(DRKitError, ValueError):
    pass


class InvalidMultiplicityError(DRKitError, ValueError):
    pass


class DimensionMismatchError(DRKitError, ValueError):
    pass


class DegeneratePlaneError(DRKitError, ValueError):
    pass


class ExcludedCaseError(DRKitError, ValueError):
    pass


class InconsistentCaseError(DRKitError, RuntimeError):
    """A dimension triple matched none of the admissible cases."""


class PreconditionError(DRKitError, ValueError):
    pass


class ConfigError(DRKitError, ValueError):
    pass
