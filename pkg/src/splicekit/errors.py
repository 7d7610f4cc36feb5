class SpliceKitError(Exception):
    """Base class for all errors raised by splicekit."""


class DomainError(SpliceKitError, ValueError):
    """An input is outside the domain of the requested operation."""


class ParseError(DomainError):
    """A graph or splice diagram file could not be parsed."""

    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class ConditionError(DomainError):
    """A semigroup or congruence precondition does not hold.

    ``certificate`` carries the failing certificate entry so callers can
    report the witness.
    """

    def __init__(self, message, certificate=None):
        self.certificate = certificate
        super().__init__(message)


class ConsistencyError(SpliceKitError, RuntimeError):
    """An internal cross-check failed; indicates a bug, not bad input."""
