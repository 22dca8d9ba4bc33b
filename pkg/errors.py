"""Exceptions raised by the gradings engine; each carries its CLI exit code."""


class GradingError(Exception):
    exit_code = 1


class DomainError(GradingError):
    """Invalid input: malformed spec, out-of-range n, inversion of zero."""

    exit_code = 2


class VerificationError(GradingError):
    """Two independent computations disagree, or an automorphism check failed."""

    exit_code = 3


class ResourceBoundError(GradingError):
    """A configured enumeration or closure bound was exceeded."""

    exit_code = 4

    def __init__(self, what: str, bound: int):
        super().__init__(f"{what} exceeds the configured bound {bound}")
        self.what = what
        self.bound = bound
