"""Exception hierarchy for hs-signorm.

Every error carries a short machine-parsable ``code`` so the CLI can report
failures on a single line. Argument problems also derive from ``ValueError``,
numerical failures from ``ArithmeticError``.
"""

from __future__ import annotations


class SignormError(Exception):
    """Base class for all library errors."""

    code = "E_SIGNORM"
    exit_status = 3

    def __init__(self, message: str = ""):
        super().__init__(message)
        self.message = message

    def one_line(self) -> str:
        """Return ``error=<code> message=<text>`` with newlines collapsed."""
        text = " ".join(str(self.message).split())
        return f"error={self.code} message={text}"


class ValidationError(SignormError, ValueError):
    """Invalid input or configuration."""

    code = "E_VALIDATION"
    exit_status = 2


class NumericalError(SignormError, ArithmeticError):
    """A computation could not be carried out reliably."""

    code = "E_NUMERICAL"
    exit_status = 3


class OutOfDomain(ValidationError):
    """Evaluation time outside the curve's parameter interval."""

    code = "E_OUT_OF_DOMAIN"


class UnsupportedDerivative(ValidationError):
    """Second derivative requested from a curve that has none (polylines)."""

    code = "E_UNSUPPORTED_DERIVATIVE"


class DimensionMismatch(ValidationError):
    """Operands live in different ambient dimensions or truncation degrees."""

    code = "E_DIMENSION_MISMATCH"


class SizeMismatch(ValidationError):
    """Empirical measures with different sample sizes."""

    code = "E_SIZE_MISMATCH"


class DomainError(ValidationError):
    """Argument outside the mathematical domain of an operation."""

    code = "E_DOMAIN"


class ConfigError(ValidationError):
    """Malformed experiment configuration or curve-spec file."""

    code = "E_CONFIG"


class NonIntegrable(NumericalError):
    """Curvature vanishes along the trajectory of the distribution ODE."""

    code = "E_NON_INTEGRABLE"


class PositivityError(NumericalError):
    """A Sturm-Liouville solution lost positivity at an atom."""

    code = "E_POSITIVITY"
