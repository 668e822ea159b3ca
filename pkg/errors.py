"""Exceptions raised by the walker-ext engine."""

from typing import Optional


class WalkerError(Exception):
    """Base class for every engine error."""


class DimensionError(WalkerError):
    """Operands live in different charts or the operation needs another dimension."""


class ParseError(WalkerError):
    """Malformed expression or scenario text."""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(str(self))

    def __str__(self) -> str:
        if self.line is None:
            return self.message
        if self.column is None:
            return f"line {self.line}: {self.message}"
        return f"line {self.line}, column {self.column}: {self.message}"


class UnknownIdentifierError(ParseError):
    """Identifier is not a coordinate of the chart."""


class ExponentError(ParseError):
    """Negative or non-integer exponent."""


class ScenarioError(ParseError):
    """Scenario text parsed but does not describe a valid computation."""


class MissingAssignmentError(WalkerError):
    """A polynomial was evaluated at a point that does not assign all of its variables."""


class NullVectorError(WalkerError):
    """A reduced operator was requested for a null vector."""


class PreconditionError(WalkerError):
    """Input data falls outside the family an operation is defined for."""


class PatternViolation(WalkerError):
    """A Walker metric is not of the self-dual canonical form.

    Attributes:
        entry: which block entry failed ("a" = B11, "b" = B22, "c" = B12)
        monomial: the offending fiber monomial, e.g. "x2p^3"
    """

    def __init__(self, entry: str, monomial: str):
        self.entry = entry
        self.monomial = monomial
        super().__init__(f"fiber monomial {monomial} is not allowed in {entry}")
