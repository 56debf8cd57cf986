"""Exception types shared across the engine."""


class EngineError(Exception):
    """Base class for all engine errors."""


class DivisionByZero(EngineError):
    """Division by an expression whose normal form is zero."""


class UnknownSymbol(EngineError):
    """An identifier that is not declared in the chart."""


class ExprSyntaxError(EngineError):
    """Expression or structure-file syntax error, with position info."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class DuplicateMode(EngineError):
    """A structure file declares both a coordinate frame and an abstract algebra."""


class MissingSection(EngineError):
    """A structure file lacks a required section."""


class DegenerateFrame(EngineError):
    """X1, X2, [X1,X2] are linearly dependent: the distribution is nowhere contact."""


class IndeterminateDomain(EngineError):
    """A zero test came back Unknown where a definite answer is required."""


class NonHorizontalBracket(EngineError):
    """A bracket [Xi, X0] has a Reeb component, contradicting ad_X0-invariance."""


class TraceViolation(EngineError):
    """The trace identity c01^1 + c02^2 = 0 fails."""


class HTildeNonzero(EngineError):
    """An operation requiring h_tilde = 0 was invoked on a structure with h_tilde != 0."""


class ThetaInvalid(EngineError):
    """A candidate normalizing angle does not satisfy its defining equations."""

    def __init__(self, message, residuals=()):
        self.residuals = tuple(residuals)
        super().__init__(message)


class DistributionNotPreserved(EngineError):
    """The candidate symmetry field does not preserve the distribution."""


class BracketPatternViolation(EngineError):
    """A marked basis does not satisfy the required bracket pattern."""


class UnknownCatalogName(EngineError):
    """Unknown built-in algebra or structure name."""
