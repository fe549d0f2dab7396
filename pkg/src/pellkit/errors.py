"""Exception classes shared by all modules."""


class DomainError(ValueError):
    """Input outside the mathematical domain of an operation."""


class InternalError(RuntimeError):
    """A derivation that must be exact was not (indicates a bug)."""


class ResourceError(RuntimeError):
    """A desk-scale guard was exceeded."""


class TheoremViolation(AssertionError):
    """A computed fact contradicts a theorem the code relies on.

    ``record`` carries a minimal counterexample for reporting.
    """

    def __init__(self, message: str, record: dict | None = None):
        super().__init__(message)
        self.record = record or {}
