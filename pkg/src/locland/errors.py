"""Exception types shared across the package."""


class DimensionError(ValueError):
    """Matrix or vector has an incompatible shape."""


class HermiticityError(ValueError):
    """Matrix expected to be Hermitian (within tolerance) is not."""


class DegenerateInputError(ValueError):
    """Operation is undefined for this input (all-zero weights, empty data, ...)."""


class NormalizationError(ValueError):
    """Vector expected to be unit-normalized is not."""


class ConfigError(ValueError):
    """Invalid run configuration."""


class AccuracyError(RuntimeError):
    """A numerical accuracy contract was violated at run time."""
