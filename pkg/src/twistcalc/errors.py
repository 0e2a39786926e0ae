"""Exception hierarchy shared by all modules."""


class TwistError(Exception):
    """Base class for every error raised by twistcalc."""


class FieldMismatch(TwistError):
    pass


class DivisionByZero(TwistError, ZeroDivisionError):
    pass


class NegativeIndexNeedsUnit(TwistError):
    pass


class NonExactDivision(TwistError):
    pass


class NotInvertible(TwistError):
    pass


class InvalidTwist(TwistError):
    pass


class NotStrong(TwistError):
    pass


class SchwarzViolated(TwistError):
    pass


class RankMismatch(TwistError):
    pass


class ModeError(TwistError):
    """Operation not available in the coefficient mode at hand."""


class UnknownSymbol(TwistError):
    pass


class ParseError(TwistError):
    """Syntax error with a 1-based source location."""

    def __init__(self, message, line=1, col=1):
        self.message = message
        self.line = line
        self.col = col
        super().__init__(f"{line}:{col}: {message}")
