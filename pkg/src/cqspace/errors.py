"""Exception hierarchy shared by every module."""


class CQSpaceError(Exception):
    """Base class; the CLI maps these to exit status 1."""


class ExpressionSyntaxError(CQSpaceError, ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} (at offset {position})")
        self.message = message
        self.position = position


class UnknownIdentifier(ExpressionSyntaxError):
    pass


class DomainError(CQSpaceError, ArithmeticError):
    """A function value at some n lies outside (0, inf) or is undefined."""


class UnknownPair(CQSpaceError, KeyError):
    pass


class InvalidParameter(CQSpaceError, ValueError):
    pass


class ScalingOverflow(CQSpaceError, OverflowError):
    """alpha**k is not representable as a finite, non-zero float."""


class InputsIndistinguishable(CQSpaceError):
    """dc_sym(f, g) is zero at the truncation horizon."""


class InconsistentCriteria(CQSpaceError):
    """Two routes to the same verdict disagree.

    ``report`` carries the full result that exposed the disagreement, when
    there is one.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report
