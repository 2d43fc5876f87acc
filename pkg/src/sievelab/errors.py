"""Exception types shared across the sieve modules."""


class InputError(ValueError):
    """Raised when arguments are outside a function's documented domain."""


class CapacityError(RuntimeError):
    """Raised when a request would exceed a configured size budget."""


class ZeroDensityError(ValueError):
    """Raised when a density value of zero makes a quantity undefined."""


class DensityRangeError(ValueError):
    """Raised when a local density at a prime p falls outside [0, p)."""
