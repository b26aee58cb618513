class InvalidInputError(ValueError):
    """An argument violates a documented precondition or schema."""


class ConvergenceError(RuntimeError):
    """An iterative numerical routine failed to reach its tolerance."""
