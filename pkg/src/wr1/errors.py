"""Exception types shared across the package."""


class Wr1Error(Exception):
    """Base class for all errors raised by this package on bad input."""


class SystemSyntaxError(Wr1Error):
    """Malformed ODE-system text; carries the offending position."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{message} (line {line}, column {col})")
        self.line = line
        self.col = col


class UndeclaredSpeciesError(SystemSyntaxError):
    """An equation references a species that was never declared."""


class NegativeExponentError(SystemSyntaxError):
    """A monomial carries a negative exponent; vertices must be nonnegative."""


class DuplicateEquationError(SystemSyntaxError):
    """A species appears on the left-hand side of two equations."""


class EmptySystemError(Wr1Error):
    """The system has no surviving terms, so there is nothing to decompose."""


class SchemaError(Wr1Error):
    """A JSON document does not match the expected schema."""


class ShapeMismatchError(SchemaError):
    """Matrix blocks of a JSON document disagree on their dimensions."""


class DuplicateVertexError(SchemaError):
    """Two columns (or graph vertices) carry the same exponent vector."""


class MissingRatesError(Wr1Error):
    """The requested operation needs rate constants but the graph has none."""


class InternalInvariantViolation(AssertionError):
    """A condition the algorithm guarantees was observed to fail; a bug."""
