"""Error hierarchy shared by every module."""


class MirrorError(Exception):
    """Base class for all library errors."""


class RingError(MirrorError, ValueError):
    """Invalid coefficient-ring operation (alpha absent, zero scalar, ...)."""


class FactorizationError(MirrorError, ValueError):
    """Malformed matrix factorization input."""


class VerificationError(MirrorError):
    """A mathematical identity failed to hold exactly.

    The offending report is kept on ``report`` so callers can print residuals.
    """

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class StripModelError(MirrorError, ValueError):
    """Strip data inconsistent with its fibration chart or parameter range."""


class ComplexError(MirrorError, ValueError):
    """Invalid torus Floer complex data."""


class UnspecifiedProductError(MirrorError):
    """An m2 structure constant outside the known product table."""


class NumericDomainError(MirrorError, ValueError):
    """Parameters outside the domain of a numeric strip formula."""


class ToricDataError(MirrorError, ValueError):
    """Invalid stacky toric data (non-positive weights, ...)."""
