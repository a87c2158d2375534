"""Exception types shared across the package."""


class ParseError(ValueError):
    """Malformed edge-list input. ``line`` is 1-based (0 when not tied to a line)."""

    def __init__(self, message, line=0):
        self.line = line
        if line:
            message = f"line {line}: {message}"
        super().__init__(message)


class RefusalError(RuntimeError):
    """An exact routine declined an instance outside its size limits."""


class BudgetExceededError(RuntimeError):
    """No separation within the requested size budget was found.

    ``best_size`` is the size of the smallest valid separation that was found
    (always available because the trivial separation is valid).
    """

    def __init__(self, message, best_size=None, context=None):
        self.best_size = best_size
        self.context = context
        super().__init__(message)
