from typing import Iterable, Optional


class SummStatError(Exception):
    """Base class for every error raised by summstat."""


class DomainError(SummStatError, ValueError):
    pass


class InfinityError(DomainError):
    """The exact answer is infinite, e.g. the normal quantile at p = 0 or p = 1."""


class ZeroTruthError(DomainError):
    """A relative error was requested against a true value of zero."""


class ValidationError(SummStatError, ValueError):
    pass


class UnsupportedPatternError(ValidationError):
    def __init__(self, message: str, missing: Iterable[str] = ()):
        self.missing = tuple(missing)
        super().__init__(message)


class DispatchError(SummStatError, ValueError):
    def __init__(self, message: str, allowed: Iterable = ()):
        self.allowed = tuple(allowed)
        super().__init__(message)


class NumericalError(SummStatError, RuntimeError):
    def __init__(self, message: str, achieved_error: Optional[float] = None):
        self.achieved_error = achieved_error
        super().__init__(message)


class ConfigurationError(SummStatError, ValueError):
    pass


class BatchFileError(SummStatError, RuntimeError):
    pass
