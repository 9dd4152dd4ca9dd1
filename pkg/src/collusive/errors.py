"""Exception types shared across the package."""


class CollusiveError(Exception):
    """Base class for every error raised by this package."""


class IndexOutOfRange(CollusiveError, IndexError):
    pass


class FormatError(CollusiveError, ValueError):
    """A text input (relation, frame, model or sequent file) failed to parse."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ParseError(CollusiveError, ValueError):
    """A formula failed to parse.

    ``position`` is the 0-based character offset of the offending token and
    ``expected`` lists the token kinds that would have been accepted there.
    """

    def __init__(self, message, position, expected=()):
        self.position = position
        self.expected = tuple(expected)
        detail = f"{message} at position {position}"
        if self.expected:
            detail += f" (expected one of: {', '.join(self.expected)})"
        super().__init__(detail)


class PreconditionFailed(CollusiveError, ValueError):
    """An operation's hypothesis does not hold; ``prop`` names the failing one."""

    def __init__(self, prop, message=None):
        self.prop = prop
        super().__init__(message or f"precondition failed: {prop}")


class NotAnIrreflexiveCollusion(PreconditionFailed):
    pass


class InvalidFrame(CollusiveError, ValueError):
    def __init__(self, diagnostics):
        self.diagnostics = diagnostics
        super().__init__(f"invalid signed frame: {diagnostics.summary()}")


class NotSSF(PreconditionFailed):
    def __init__(self, witness=None):
        self.witness = witness
        super().__init__("ssf", f"R- is not symmetric (witness {witness})")


class PartitionIncompatible(CollusiveError, ValueError):
    def __init__(self, kind, edge):
        self.kind = kind
        self.edge = edge
        super().__init__(f"partition violates {kind} edge {edge}")


class TooLarge(CollusiveError, ValueError):
    pass


class TooLargeForBruteForce(TooLarge):
    pass


class UnknownRelation(CollusiveError, KeyError):
    def __str__(self):
        return f"unknown relation {self.args[0]!r}"


class UnknownAtom(CollusiveError, KeyError):
    def __str__(self):
        return f"atom {self.args[0]!r} has no valuation"


class MalformedSequent(CollusiveError, ValueError):
    pass
