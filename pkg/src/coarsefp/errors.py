"""Exception taxonomy shared by the whole toolkit.

The command line maps these onto exit codes: InputError -> 2,
ResourceLimitError -> 3, and every other toolkit error (a failed
mathematical guarantee of some kind) -> 1.
"""


class CoarseFPError(Exception):
    """Base class for all toolkit errors."""


class InputError(CoarseFPError, ValueError):
    """Malformed or out-of-contract input."""


class ConvergenceError(CoarseFPError):
    """An iterative solver hit its cap before reaching the target."""


class ResourceLimitError(CoarseFPError):
    """A size cap (group order, composition depth, ...) would be exceeded."""


class InvariantViolation(CoarseFPError):
    """A runtime self-check that should hold mathematically failed."""


class CertificateError(CoarseFPError):
    """An exact certificate did not verify; the mismatch is reported."""


class NumericalError(CoarseFPError):
    """A numerical guarantee (PSD tolerance, factor residual, ...) failed."""
