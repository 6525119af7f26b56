"""Exception types shared by all modules."""


class InvalidInputError(ValueError):
    """Malformed or out-of-range input."""


class BudgetExceededError(RuntimeError):
    """A search ran out of its node budget.

    ``bounds`` holds whatever was established before giving up.
    """

    def __init__(self, message, bounds=None):
        super().__init__(message)
        self.bounds = dict(bounds or {})


class InternalError(RuntimeError):
    """An internal consistency check failed."""
