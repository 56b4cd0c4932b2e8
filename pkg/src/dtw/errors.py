"""Exception types shared across the package."""


class DtwError(Exception):
    """Base class for all package-specific errors."""


class ParseError(DtwError):
    """Malformed concrete syntax.

    ``pos`` is the 1-based character position within the offending line (or
    the whole input when the input is a single formula); ``line`` is the
    1-based line number for multi-line inputs.
    """

    def __init__(self, message, pos=None, expected=None, line=None):
        detail = message
        loc = []
        if line is not None:
            loc.append(f"line {line}")
        if pos is not None:
            loc.append(f"position {pos}")
        if loc:
            detail += " (" + ", ".join(loc) + ")"
        if expected:
            detail += f"; expected {expected}"
        super().__init__(detail)
        self.message = message
        self.pos = pos
        self.line = line
        self.expected = expected


class EmptyInputError(ParseError):
    """Input was empty or contained only whitespace/comments."""

    def __init__(self, message="empty input"):
        super().__init__(message, pos=1)


class ValidationError(DtwError):
    """One or more structural invariants of a game are violated."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class UnknownAgentError(DtwError):
    pass


class UnknownStateError(DtwError):
    pass


class UnknownPlayError(DtwError):
    pass


class ResourceLimitError(DtwError):
    """A configured work budget would be exceeded."""


class UniverseTooLargeError(ResourceLimitError):
    """Subcoalition expansion would exceed the node budget."""


class TooManyAtomsError(DtwError):
    """Truth-table check over more than the supported number of atoms."""


class BadParamsError(DtwError):
    """Caller-supplied parameters violate a documented precondition."""
