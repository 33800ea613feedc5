"""Exceptions raised by the analyzer."""


class AnalyzerError(Exception):
    """Base error of the analyzer; `exit_code` is used by the CLI."""

    exit_code: int = 1


class DimensionMismatch(AnalyzerError, ValueError):
    """Vectors of different lengths were mixed in one computation."""

    exit_code = 2


class NotInCone(AnalyzerError):
    """A target vector is not a nonnegative combination of generators."""

    exit_code = 4


class UnsupportedType(AnalyzerError, ValueError):
    """Unknown root datum specification."""

    exit_code = 2


class WeylGroupTooLarge(AnalyzerError):
    """Weyl group enumeration refused by the configured order limit."""

    exit_code = 3


class InstanceError(AnalyzerError, ValueError):
    """An instance violates one of its consistency conditions."""

    exit_code = 2


class CapExceeded(AnalyzerError):
    """Too many weights for exhaustive enumeration."""

    exit_code = 3


class OracleMissing(AnalyzerError):
    """No relative invariant oracle is attached to the instance."""

    exit_code = 2


class ShapeMismatch(AnalyzerError, ValueError):
    """Oracle shape does not fit the instance or the sample point."""

    exit_code = 2


class InvalidMu(AnalyzerError, ValueError):
    """Mu is not a strictly positive combination of fundamental characters."""

    exit_code = 2


class GradingError(AnalyzerError, ValueError):
    """Grading element is non-dominant, non-integral or inconsistent."""

    exit_code = 2


class NotFound(AnalyzerError):
    """No Weyl conjugate of a filtration meets the regular set."""

    exit_code = 4


class InvariantViolation(AnalyzerError):
    """An identity that must hold by theory failed; indicates a bug."""

    exit_code = 4


class AmbiguityError(InvariantViolation):
    """Standardization found several distinct subspaces."""


class ExceptionalStatusUnknown(AnalyzerError):
    """Exceptional-pair search could not decide without an oracle."""

    exit_code = 2
