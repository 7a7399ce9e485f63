"""Exception types shared across the package."""


class ResourceLimitError(RuntimeError):
    """An operation would exceed a configured size/memory cap."""


class LatticeFormatError(ValueError):
    """A lattice document failed to parse or validate.

    ``line`` is the 1-based line number of the offending entry when the
    problem is attributable to one.
    """

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
