"""Exception types shared across the package."""


class SnsError(Exception):
    """Base class for all package errors."""


class InvalidParameterError(SnsError):
    """A parameter violates its documented domain (e.g. e_lo >= e_hi)."""


class NumericalFaultError(SnsError):
    """A state update produced NaN/Inf.

    Carries the first offending neuron index and, when known, the step
    at which the fault appeared.
    """

    def __init__(self, message, index=None, step=None):
        super().__init__(message)
        self.index = index
        self.step = step


class ConvergenceError(SnsError):
    """Fixed-point iteration exhausted its budget. Carries the residual."""

    def __init__(self, message, residual=None, iterations=None):
        super().__init__(message)
        self.residual = residual
        self.iterations = iterations


class TrainingDivergedError(SnsError):
    """Training loss became non-finite. Carries the epoch index."""

    def __init__(self, message, epoch=None):
        super().__init__(message)
        self.epoch = epoch


class EncodingError(SnsError):
    """A sensor value or command cannot be encoded (out of workspace/range)."""


class ProtocolParseError(SnsError):
    """A device line contained a malformed field. Carries the byte offset."""

    def __init__(self, message, offset=None):
        super().__init__(message)
        self.offset = offset
