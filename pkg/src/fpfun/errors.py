"""Exception types shared across the package."""


class ParseError(ValueError):
    """Input text (polynomial string or problem file) does not match the grammar."""


class StructureError(ValueError):
    """Algebraic data is malformed or mutually inconsistent."""


class ColengthError(ValueError):
    """The ideal does not have finite colength in the ambient ring."""

    def __init__(self, message: str, variable: str | None = None):
        super().__init__(message)
        self.variable = variable


class EvaluationDomainError(ValueError):
    """Evaluation was requested outside the valid domain."""


class InexactDivisionError(ArithmeticError):
    """A division that must be exact left a remainder."""


class ModelConstructionError(ValueError):
    """Closed-form model data violates a constructor invariant."""
