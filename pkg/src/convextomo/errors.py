"""Exception types shared across the reconstruction pipelines."""


class ReconstructionError(Exception):
    """Base class for all errors raised by this package."""


class OutOfGridError(ReconstructionError):
    """A point lies outside the grid it was declared to live in."""


class EmptySetError(ReconstructionError):
    """An operation that needs a non-empty lattice set received an empty one."""


class NonContiguousFootError(ReconstructionError):
    """An extremal subset of a set is not a contiguous run of cells."""


class UnsupportedError(ReconstructionError):
    """The input is outside the supported problem domain (e.g. zero X-ray entries)."""


class MalformedResidualError(ReconstructionError):
    """A residual partition does not have the structure the aggregation step needs."""


class ContradictionSignal(ReconstructionError):
    """A local deduction shows the current hypothesis admits no solution."""


class ParseError(ReconstructionError):
    """An input file could not be parsed; carries a 1-based line and column."""

    def __init__(self, line: int, column: int, message: str):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
        self.message = message
