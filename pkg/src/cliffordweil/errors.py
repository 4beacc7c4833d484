class PreconditionError(ValueError):
    """An operation was called outside its domain."""


class CapExceeded(RuntimeError):
    """A size cap guarding an exhaustive computation was hit."""


class ConsistencyError(AssertionError):
    """An internal cross-check failed (e.g. a non-integer Molien coefficient)."""
