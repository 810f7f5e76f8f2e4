"""Exception types shared across the package."""


class ParseError(ValueError):
    """Malformed input text (facet files, relations, code, edge lists).

    Carries the 1-based line number when known.
    """

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InternalCheckError(RuntimeError):
    """A structural self-check failed (e.g. a composed boundary is nonzero)."""
