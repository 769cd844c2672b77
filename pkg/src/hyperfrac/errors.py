"""Exception types shared across the package."""


class HyperfracError(Exception):
    """Base class for all package errors."""


class ParseError(HyperfracError):
    """A textual artifact (set file, IFS file, grid-set file, rational) is malformed."""


class DepthError(HyperfracError):
    """A requested cover depth is too shallow to resolve the structure it must show."""


class LevelCapError(HyperfracError):
    """A section level beyond the exact-materialization cap was requested."""


class UnrepresentableError(HyperfracError):
    """A grid set outside the finitely-describable class was requested."""


class MaterializationError(HyperfracError):
    """An exact value was requested whose representation exceeds the size budget."""


class CertificationError(HyperfracError):
    """A certified comparison could not be decided (should not happen on valid input)."""


class IterationCapExceeded(HyperfracError):
    """Attractor iteration hit the cap before reaching the requested tolerance.

    Carries the last iterate so callers can inspect how far the run got.
    """

    def __init__(self, message, last_result=None):
        super().__init__(message)
        self.last_result = last_result
