"""
Error types for ckforms
"""
from typing import Optional


class CKFormsError(Exception):
    """Base class for every error raised by the library"""

    exit_code = 1


class ValidationError(CKFormsError):
    """Bad user input: grammar, config, unsupported parameters"""

    exit_code = 2


class ParseError(ValidationError):
    """Grammar failure with the offending position and an expected-token hint"""

    def __init__(self, message: str, text: str = "", position: int = 0, expected: Optional[str] = None):
        self.text = text
        self.position = position
        self.expected = expected
        detail = f"{message} at position {position}"
        if expected:
            detail += f" (expected {expected})"
        if text:
            detail += f"\n  {text}\n  {' ' * position}^"
        super().__init__(detail)


class ConfigError(ValidationError):
    pass


class UnsupportedFamily(ValidationError):
    pass


class DimensionCapExceeded(ValidationError):
    pass


class IncompatiblePair(ValidationError):
    pass


class UnsupportedSpace(ValidationError):
    pass


class SignatureViolation(CKFormsError):
    """The Killing form has the wrong signature on k or on the p-part"""


class ThetaIncompatibleEmbedding(CKFormsError):
    pass


class DegenerateForm(CKFormsError):
    pass


class DimensionMismatch(CKFormsError):
    pass


class SearchBudgetExceeded(CKFormsError):
    pass


class NotAComplexificationPair(CKFormsError):
    pass


class DegreeTooLarge(CKFormsError):
    pass


class DegeneratePairing(CKFormsError):
    pass


class NotARingMap(CKFormsError):
    pass


class ReportIoError(CKFormsError):
    pass


class InvariantError(CKFormsError):
    """Two independent computations of the same quantity disagree"""
