"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument is outside the domain of the requested operation."""


class ResourceLimitError(RuntimeError):
    """A computation would exceed a configured size or budget limit."""


class GraphParseError(ValueError):
    """Malformed graph text.  Carries the offending line number."""

    def __init__(self, message: str, line_number: int):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class InvariantViolation(RuntimeError):
    """A certified internal invariant failed; this indicates a bug."""
