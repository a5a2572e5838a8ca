"""Exception hierarchy shared by the engine and the CLI."""


class SerreMultError(Exception):
    """Base class for engine errors."""


class DivisionByZero(SerreMultError, ZeroDivisionError):
    pass


class NonInvertibleDenominator(DivisionByZero):
    pass


class RingMismatch(SerreMultError):
    pass


class ArityMismatch(SerreMultError):
    pass


class ResourceLimitExceeded(SerreMultError):
    pass


class InfiniteLength(SerreMultError):
    pass


class NotAResolution(SerreMultError):
    pass


class Inconclusive(SerreMultError):
    pass


class SerreConditionViolated(SerreMultError):
    pass


class NotPrimary(SerreMultError):
    pass


class UnsupportedRing(SerreMultError):
    pass


class ParseError(SerreMultError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        loc = f" at line {line}, column {column}" if line is not None else ""
        super().__init__(f"{message}{loc}")
