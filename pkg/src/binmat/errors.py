"""Exception types shared across the package."""


class MatroidError(ValueError):
    """A domain error: bad labels, foreign subsets, violated preconditions."""


class CapExceeded(MatroidError):
    """An exhaustive search was refused because the input is over its size cap."""


class ParseError(MatroidError):
    """A malformed input file."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)
