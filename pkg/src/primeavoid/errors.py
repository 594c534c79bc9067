"""Exception hierarchy shared by every module."""


class AlgebraError(Exception):
    """Base class for all errors raised by this package."""


class AxiomViolation(AlgebraError):
    """Explicit tables fail a ring law."""


class SizeCap(AlgebraError):
    """A construction or enumeration exceeds its configured size cap."""


class RingMismatch(AlgebraError):
    """Operands live in different rings."""


class ImproperIdeal(AlgebraError):
    """The unit ideal was passed where a proper ideal is required."""


class ZeroHit(AlgebraError):
    """The multiplicative set contains zero, so the localization is the zero ring."""


class NotPrime(AlgebraError):
    pass


class NotContained(AlgebraError):
    pass


class TooManyNonRadical(AlgebraError):
    pass


class HypothesisFails(AlgebraError):
    pass


class PremiseFails(AlgebraError):
    """Some subfamily of the input already violates avoidance."""

    def __init__(self, message, counterexample=None):
        super().__init__(message)
        self.counterexample = counterexample


class ContextMismatch(AlgebraError):
    """Polynomials or ideals from different polynomial ring contexts."""


class BudgetExceeded(AlgebraError):
    pass


class MalformedPayload(AlgebraError):
    pass


class DescriptionInconsistent(AlgebraError):
    pass


class ParseError(AlgebraError):
    pass
