"""Exception types raised across the package."""


class TConicError(ValueError):
    """Base class for invalid-input and precondition failures."""


class InvalidFraction(TConicError):
    pass


class InvalidChain(TConicError):
    pass


class GraphError(TConicError):
    pass


class UnknownVertex(GraphError):
    pass


class UnknownEdge(GraphError):
    pass


class NotBlack(GraphError):
    pass


class NotContractible(GraphError):
    pass


class NotATree(GraphError):
    pass


class GraphParseError(GraphError):
    """Malformed graph text; carries the 1-based line and column."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


class NotParabolic(TConicError):
    pass


class NonPositiveKernel(TConicError):
    pass


class SingularSystem(TConicError):
    pass


class NotApplicable(TConicError):
    pass


class PreconditionViolated(TConicError):
    pass


class PostVerificationFailed(TConicError):
    pass


class NotATChain(TConicError):
    pass


class NotFound(TConicError):
    pass


class BoundsTooLarge(TConicError):
    pass


class ClassificationGap(AssertionError):
    """An enumerated fiber graph matched none of the known families."""

    def __init__(self, message, witnesses=()):
        super().__init__(message)
        self.witnesses = list(witnesses)


class InconsistencyError(AssertionError):
    """An identity that must hold for every valid fiber graph failed."""
