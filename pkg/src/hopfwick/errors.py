"""Exception types raised by the symbolic engine."""


class HopfWickError(Exception):
    """Base class for domain errors (CLI exit code 1)."""


class DimensionMismatch(HopfWickError, ValueError):
    pass


class LabelOverflow(HopfWickError, ValueError):
    pass


class NotInjective(HopfWickError, ValueError):
    pass


class DiagonalContraction(HopfWickError):
    """Two generators at the same point label were asked to contract."""


class DiagonalPoint(HopfWickError):
    """A time-ordered monomial carries two factors at one point label."""


class MissingKernelValue(HopfWickError, LookupError):
    def __init__(self, symbol):
        self.symbol = symbol
        super().__init__(f"no kernel value for {symbol}")

    def __str__(self):
        return self.args[0]


class OddCount(HopfWickError, ValueError):
    pass


class ExprSyntaxError(HopfWickError):
    """Parse failure in the expression language; ``offset`` is a byte offset."""

    def __init__(self, message, offset):
        self.offset = offset
        super().__init__(f"{message} at offset {offset}")
