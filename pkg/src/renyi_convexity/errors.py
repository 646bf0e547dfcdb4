"""Exception hierarchy shared by every module of the package."""


class RenyiError(Exception):
    """Base class for all package errors."""


class ValidationError(RenyiError, ValueError):
    """Input rejected before any numerics ran."""


class NumericalFailure(RenyiError, ArithmeticError):
    """A numerical procedure could not reach its stopping criterion."""


class EmptyInput(ValidationError):
    pass


class NegativeEntry(ValidationError):
    pass


class SumOutOfTolerance(ValidationError):
    pass


class ZeroProbability(ValidationError):
    """Raised by formulas that need log p_k for every coordinate."""


class SupportMismatch(ValidationError):
    pass


class InvalidRange(ValidationError):
    pass


class InvalidSpec(ValidationError):
    pass


class EpsilonTooLarge(ValidationError):
    pass


class RatioOutOfRange(ValidationError):
    pass


class DomainViolation(ValidationError):
    pass


class CertificateViolation(NumericalFailure):
    pass


class BracketNotFound(NumericalFailure):
    pass


class TruncationFailure(NumericalFailure):
    pass
