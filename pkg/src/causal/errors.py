"""
causal/errors.py

Exception hierarchy for every input and budget error the package raises
"""

from typing import Optional, Sequence


class CausalError(Exception):
    """Base class for all user-facing errors."""


class SignatureError(CausalError):
    """Malformed signature: duplicate names, short ranges, bad tokens."""


class InvalidContext(CausalError):
    pass


class InvalidIntervention(CausalError):
    pass


class ValidationError(CausalError):
    """A formula or model does not match the signature it is used with."""


class BudgetExceeded(CausalError):
    """An enumeration would exceed the configured step budget."""

    def __init__(self, what: str, size: int, budget: int):
        self.what = what
        self.size = size
        self.budget = budget
        super().__init__(f"{what}: {size} exceeds budget {budget}")


class ModelFormatError(CausalError):
    """Error while loading a model or signature file."""

    def __init__(self, message: str, line: Optional[int] = None, source: str = "<model>"):
        self.line = line
        self.source = source
        where = f"{source}:{line}" if line is not None else source
        super().__init__(f"{where}: {message}")


class FormulaSyntaxError(CausalError):
    def __init__(self, message: str, position: int, expected: Sequence[str] = ()):
        self.message = message
        self.position = position
        self.expected = tuple(expected)
        text = f"column {position + 1}: {message}"
        if self.expected:
            text += f" (expected {', '.join(self.expected)})"
        super().__init__(text)


class UnknownVariable(ValidationError):
    pass


class OutOfRangeValue(ValidationError):
    pass


class BadContextArity(ValidationError):
    pass


class DuplicateInterventionTarget(InvalidIntervention):
    pass


class NotRecursive(CausalError):
    pass


class NotUniqueSolutions(CausalError):
    pass


class GuardViolated(CausalError):
    pass


class ShapeMismatch(CausalError):
    pass


class MalformedCnf(CausalError):
    pass
