"""Exception types shared across the package."""


class AhpError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(AhpError):
    """Input failed validation. Carries the itemized diagnostics."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = list(diagnostics or [])


class ConvergenceError(AhpError):
    """Iterative solver did not converge. Carries the last iterate."""

    def __init__(self, message, last_value=None):
        super().__init__(message)
        self.last_value = last_value
