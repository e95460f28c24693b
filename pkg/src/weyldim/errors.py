"""Exception types shared across the engine."""


class WeylError(Exception):
    """Base class for all engine errors."""


class DimensionMismatchError(WeylError):
    """Two operands live over different ambient variable counts."""


class ZeroOperandError(WeylError):
    """Operation is undefined for the zero operator (e.g. principal symbol)."""


class OpSyntaxError(WeylError):
    """Expression text does not conform to the operator grammar."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class VariableIndexError(OpSyntaxError):
    """Variable index is 0 or exceeds the ambient count."""


class ExponentError(OpSyntaxError):
    """Exponent is negative or not an integer literal."""


class CorpusFormatError(WeylError):
    """A corpus file violates the line format (bad key, missing n=, bad shift list)."""

    def __init__(self, message: str, line: int):
        super().__init__(f"{message} (line {line})")
        self.line = line


class UnboundedBasisError(WeylError):
    """Order-filtration basis requested without a finite x-degree bound."""


class ModuleMismatchError(WeylError):
    """Two filtration specs do not present the same module."""


class ZeroModuleError(WeylError):
    """The presented module is zero; the requested quantity is undefined."""


class InconclusiveError(WeylError):
    """Truncation did not stabilize within budget; no answer is reported."""


class InsufficientDataError(WeylError):
    """Too few samples to pin down the polynomial being fitted."""
