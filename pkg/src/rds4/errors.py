"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument is outside the mathematical domain of the operation."""


class ResourceError(RuntimeError):
    """A computation exceeded its configured size or budget cap."""


class InternalError(RuntimeError):
    """An invariant that should hold by theorem failed; indicates a bug."""


class ParseError(ValueError):
    """A data file is malformed; carries the offending location."""

    def __init__(self, message, path=None, line=None):
        loc = ""
        if path is not None:
            loc = f"{path}:"
            if line is not None:
                loc += f"{line}:"
            loc += " "
        super().__init__(loc + message)
        self.path = path
        self.line = line
