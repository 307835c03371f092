"""Exception hierarchy shared by the library and the CLI."""


class LambdaRingError(Exception):
    """Base class for all library errors."""


class InputError(LambdaRingError, ValueError):
    """Malformed or inconsistent input (bad field, cycle grammar, mixed fields)."""


class ValidationError(LambdaRingError, ValueError):
    """An action spec violates the structural requirements of a Lambda-structure."""


class BudgetExceeded(LambdaRingError, RuntimeError):
    """An enumeration ran out of its norm budget before reaching a certificate."""


class BijectionMismatch(LambdaRingError, RuntimeError):
    """The two Deligne-Ribet constructions disagree. Always fatal."""
