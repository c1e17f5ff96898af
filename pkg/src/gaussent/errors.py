"""Exception types shared across the package."""


class DomainError(ValueError):
    """A formula was evaluated outside its numerical domain."""


class MalformedStateError(DomainError):
    """Input does not describe a physical two-mode Gaussian state."""


class InvalidChannelError(DomainError):
    """Channel parameter outside its admissible range."""


class SingularGainError(DomainError):
    """EPR gain pair with 1 + gx*gp = 0; the witness is undefined there."""


class BudgetExceededError(RuntimeError):
    """An iterative search ran out of budget; carries the best result so far."""

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class DecompositionError(RuntimeError):
    """No valid decomposition found where one must exist; indicates a bug."""
