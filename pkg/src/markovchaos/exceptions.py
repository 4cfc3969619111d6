"""Exception types raised across the package.

Every error carries a short ``code`` string so the CLI and reports can name
the failure without parsing messages.
"""


class MarkovChaosError(Exception):
    code = "Error"


class ValidationError(MarkovChaosError, ValueError):
    """Raised when user-supplied data violates a structural invariant."""

    def __init__(self, code, message, **details):
        super().__init__(message)
        self.code = code
        self.details = details

    def __str__(self):
        return f"{self.code}: {self.args[0]}"


class EnumerationBudgetExceeded(MarkovChaosError, RuntimeError):
    code = "EnumerationBudgetExceeded"


class ConfigParseError(MarkovChaosError, ValueError):
    code = "ConfigParseError"
