"""Exception hierarchy shared by every module."""


class KnotCertError(Exception):
    """Base class for all library errors."""


class MalformedToken(KnotCertError, ValueError):
    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class LabelCountError(KnotCertError, ValueError):
    pass


class DisconnectedTrace(KnotCertError, ValueError):
    pass


class NotAKnot(KnotCertError, ValueError):
    pass


class NonPlanarInput(KnotCertError, ValueError):
    pass


class ResourceLimit(KnotCertError):
    pass


class DisconnectedInput(KnotCertError, ValueError):
    pass


class NotQuarterInteger(KnotCertError, ArithmeticError):
    pass


class MethodDisagreement(KnotCertError, ArithmeticError):
    pass


class NotReduced(KnotCertError, ValueError):
    pass


class NotAlternating(KnotCertError, ValueError):
    pass


class ZeroV3(KnotCertError, ValueError):
    pass


class HypothesisViolated(KnotCertError, ValueError):
    pass


class LemmaContradiction(KnotCertError, ArithmeticError):
    pass


class DegenerateDenominator(KnotCertError, ZeroDivisionError):
    pass


class ViolationFound(KnotCertError):
    pass
