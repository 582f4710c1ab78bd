"""Exception hierarchy shared by every module in the package."""


class MaxEntTransitionsError(Exception):
    """Base class for all package errors."""


class InvalidInputError(MaxEntTransitionsError, ValueError):
    """An argument lies outside the domain the operation accepts."""


class DomainError(MaxEntTransitionsError, ValueError):
    """The inputs are well-formed but the requested quantity does not exist."""


class UndefinedAggregateError(DomainError):
    """A state was never entered (backward) or never left (forward)."""


class ParseError(MaxEntTransitionsError, ValueError):
    """A session file could not be read; ``line`` is 1-based when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ValidationError(MaxEntTransitionsError, ValueError):
    """A dataset violates one or more structural invariants."""

    def __init__(self, violations: list[str]):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class InvariantViolation(MaxEntTransitionsError, RuntimeError):
    """Internal state broke an invariant that should be unreachable."""
