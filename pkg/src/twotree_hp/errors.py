"""Exception hierarchy shared by every stage of the solver."""


class TwoTreeError(Exception):
    """Base class for all errors raised by this package."""


class MissingVertex(TwoTreeError, KeyError):
    pass


class MissingEdge(TwoTreeError, KeyError):
    pass


class Disconnected(TwoTreeError):
    pass


class NotTwoTree(TwoTreeError):
    pass


class PreconditionViolated(TwoTreeError):
    pass


class ConstructionFailed(TwoTreeError):
    """Every check passed but no valid path could be assembled.

    This never means "no Hamiltonian path"; it flags an internal contract breach.
    """


class TooLarge(TwoTreeError):
    pass


class InfeasibleProfile(TwoTreeError):
    pass


class ParseError(TwoTreeError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
