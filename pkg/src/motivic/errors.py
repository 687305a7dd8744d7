"""Exception hierarchy shared by all modules."""


class MotivicError(Exception):
    """Base class for every error raised by this package."""


class DomainError(MotivicError, ValueError):
    """Well-formed input that violates a mathematical precondition."""


class PoleError(DomainError, ZeroDivisionError):
    pass


class RegistryMismatchError(DomainError):
    pass


class UnresolvedGeneratorError(DomainError):
    """A realization was asked of a class that is not a Laurent polynomial in L."""

    def __init__(self, names):
        self.names = tuple(names)
        super().__init__("class is not L-pure; unresolved generators: " + ", ".join(self.names))


class NotDualizableError(DomainError):
    def __init__(self, name, reason):
        self.name = name
        super().__init__(f"generator {name!r} is not dualizable: {reason}")


class ParseError(MotivicError):
    """Syntax error with a 1-based line/column anchor."""

    def __init__(self, message, line=1, column=1, source=None):
        self.message = message
        self.line = line
        self.column = column
        self.source = source
        super().__init__(f"{line}:{column}: {message}")
