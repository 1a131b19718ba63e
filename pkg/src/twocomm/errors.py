"""Exception types raised across the package."""


class TwoCommError(Exception):
    """Base class; ``code`` is the short name used in CLI error documents."""

    code = "Error"


class DimensionError(TwoCommError, ValueError):
    code = "DimensionError"


class DescriptorMismatch(TwoCommError, ValueError):
    code = "DescriptorMismatch"


class NotInvertible(TwoCommError, ArithmeticError):
    code = "NotInvertible"


class ZeroElement(TwoCommError, ValueError):
    code = "ZeroElement"


class IsAField(TwoCommError, ValueError):
    code = "IsAField"


class NotAnIdentity(TwoCommError, ValueError):
    code = "NotAnIdentity"


class NotOnSphere(TwoCommError, ValueError):
    code = "NotOnSphere"


class TooLarge(TwoCommError, ValueError):
    code = "TooLarge"


class Unsupported(TwoCommError, ValueError):
    code = "Unsupported"


class SearchExhausted(TwoCommError, RuntimeError):
    """A bounded search gave up; ``transcript`` lists what was tried."""

    code = "SearchExhausted"

    def __init__(self, message, transcript=()):
        super().__init__(message)
        self.transcript = list(transcript)
