"""Exception types raised across the package."""


class DimensionError(ValueError):
    """Shapes, extents or mode indices are incompatible."""


class DegenerateInputError(ArithmeticError):
    """Input is degenerate for the requested operation (zero tensor, zero direction, ...)."""


class ConvergenceError(ArithmeticError):
    """An iterative procedure failed to converge."""


class TensorFormatError(ValueError):
    """Malformed tensor text file. Carries the offending line and column."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)
