"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Raised when a chain specification or argument is invalid."""


class CapacityError(RuntimeError):
    """Raised when a computation would exceed a configured size cap.

    The message states the offending size and, where one exists, the
    backend that can handle the request instead.
    """


class ConvergenceError(RuntimeError):
    """Raised when an iterative numerical routine fails to reach its
    tolerance; the message reports the residual actually achieved."""
