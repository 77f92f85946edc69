"""Exception hierarchy shared by all padicwave modules."""


class PadicWaveError(ValueError):
    """Base class for validation failures raised by padicwave."""


class BaseMismatchError(PadicWaveError):
    """Operands live over different primes."""


class PrecisionError(PadicWaveError):
    """The tracked p-adic precision cannot support the requested result."""


class ResolutionError(PadicWaveError):
    """A locally constant function is too coarse for the requested operation."""


class ShapeMismatchError(PadicWaveError):
    """Operands have incompatible shapes (tree shape, signal length, window)."""


class NormalizationError(PadicWaveError):
    """A register or state violates the unit-norm precondition."""


class CapacityError(PadicWaveError):
    """A dense register would exceed the configured amplitude cap."""


class UnsupportedOperationError(PadicWaveError):
    """The requested operation has no defined semantics."""
