"""Exception hierarchy for ladder analysis.

Every error carries enough context to be printed as a one-line diagnostic by
the command-line front end.
"""


class LadderError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatch(LadderError, ValueError):
    pass


class GameFormatError(LadderError, ValueError):
    """A game file or table could not be parsed or failed validation."""

    def __init__(self, message, field=None, line=None):
        self.field = field
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)


class EnumerationLimit(LadderError):
    def __init__(self, size, cap):
        self.size = size
        self.cap = cap
        super().__init__(f"enumeration of {size} items exceeds cap {cap}")


class InvalidLevels(LadderError, ValueError):
    pass


class LevelOutOfRange(LadderError, ValueError):
    pass


class DegenerateRange(LadderError):
    """The production function is constant, so no pivot level exists."""


class NotMonotone(LadderError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"game violates its declared orientation at {witness}")


class NotLinear(LadderError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"relation is not complete; players {witness[0]} and {witness[1]} are incomparable")


class NotDominant(LadderError, ValueError):
    pass


class NotInDomain(LadderError, ValueError):
    pass


class InternalInconsistency(LadderError):
    """A structural claim that should hold for every game was violated.

    Raised instead of returning a partial answer; the message names the claim.
    """


class NoPivot(InternalInconsistency):
    pass


class MultiplePivots(InternalInconsistency):
    pass
