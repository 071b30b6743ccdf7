"""
Exceptions raised by the sumform toolkit.

Every error carries a stable ``code`` string (for example ``"sum-not-one"``)
so that callers and the command-line tool can react to it without parsing
messages.
"""

from typing import Dict


class SumFormError(Exception):
    """
    Base class for all toolkit errors.

    Attributes:
        code: Stable machine-readable error code.
        message: Human readable explanation.

    Example::

        try:
            make_rational(3, 0)
        except SumFormError as e:
            print(e.code)   # "zero-denominator"
    """

    def __init__(self, code: str, message: str = ""):
        self.code = code
        self.message = message or code
        super().__init__(f"{code}: {self.message}" if message else code)

    def to_dict(self) -> Dict[str, str]:
        """Convert to dictionary for JSON error output."""
        return {"error": self.code, "message": self.message}


class ScalarError(SumFormError, ValueError):
    """Invalid scalar construction, parsing or backend mixing."""


class FieldDivisionError(SumFormError, ZeroDivisionError):
    """Division by an exact or float zero."""

    def __init__(self, message: str = "division by zero"):
        super().__init__("division-by-zero", message)


class DistributionError(SumFormError, ValueError):
    """A list of scalars is not a member of the closed simplex."""


class MapError(SumFormError, ValueError):
    """Invalid additive/multiplicative map or failed function evaluation."""


class EquationError(SumFormError, ValueError):
    """Invalid equation description (arity, lambda, constant)."""


class FamilyError(SumFormError, ValueError):
    """A solution-family constructor rejected its parameters."""


class ResidualError(SumFormError, ValueError):
    """Residual evaluation received mismatching inputs."""


class FitError(SumFormError):
    """Least-squares fitting or grid solving failed."""


class SpecError(SumFormError, ValueError):
    """
    A JSON function or bundle specification does not match the schema.

    Attributes:
        pointer: JSON pointer of the offending value (e.g. ``/inner/lambda``).
    """

    def __init__(self, code: str, message: str = "", pointer: str = ""):
        self.pointer = pointer
        super().__init__(code, f"{message} (at {pointer or '/'})")

    def to_dict(self) -> Dict[str, str]:
        result = super().to_dict()
        result["pointer"] = self.pointer or "/"
        return result


class EntropyError(SumFormError, ValueError):
    """Invalid entropy order."""


class UsageError(SumFormError, ValueError):
    """Invalid command-line arguments."""
