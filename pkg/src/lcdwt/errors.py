"""Exception hierarchy shared by every module."""


class LCDWTError(Exception):
    """Base class for all errors raised by :mod:`lcdwt`."""


class ParameterError(LCDWTError, ValueError):
    """Invalid parameter: bad matrix, grid size, exponent triple, etc."""


class DomainError(LCDWTError, ValueError):
    """Argument outside the domain of a scalar function."""


class RangeError(LCDWTError, ValueError):
    """Evaluation point outside the sampled range of a signal."""


class NumericalError(LCDWTError, ArithmeticError):
    """Non-finite value produced during a computation."""

    def __init__(self, message, node=None):
        super().__init__(message)
        self.node = node


class AdmissibilityError(LCDWTError):
    """Mother wavelet fails the admissibility test."""
