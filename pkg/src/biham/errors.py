"""Exception types shared across the package."""


class BihamError(Exception):
    """Base class for all library-specific errors."""


class InvalidEdge(BihamError):
    pass


class InvalidVertex(BihamError):
    pass


class InvalidEndpoints(BihamError):
    pass


class EmptyPart(BihamError):
    pass


class NotBalanced(BihamError):
    pass


class NotNearlyBalanced(BihamError):
    pass


class NotSubgraph(BihamError):
    pass


class TooLarge(BihamError):
    pass


class ParseError(BihamError):
    """Malformed BEL text; carries the 1-based offending line number."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class InvalidFamilyParams(BihamError):
    """A parametric family constraint was violated; names the failed inequality."""


class ConvergenceFailure(BihamError):
    """Power iteration hit its iteration cap; carries the last residual."""

    def __init__(self, message, residual=None, iterations=None):
        super().__init__(message)
        self.residual = residual
        self.iterations = iterations


class BracketError(BihamError):
    """Bisection bracket does not isolate a sign change."""


class CorruptRecord(BihamError):
    """Sweep record failed its fingerprint or replay check."""


class FalsificationError(BihamError):
    """A graph satisfied a condition's full hypothesis yet failed the oracle."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report
