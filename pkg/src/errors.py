"""Error types with stable machine-readable codes."""

from typing import Any, Dict, Optional

import numpy as np


class AttributionError(Exception):
    """Base class for every estimation, ingestion and simulation failure."""

    code = "attribution-error"

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message

    def to_dict(self) -> Dict[str, Any]:
        """Machine-readable form used by the CLI error output."""
        return {"error": self.code, "message": self.message}


class SchemaError(AttributionError):
    """A named column is missing from the input file."""

    code = "schema-error"

    def __init__(self, column: str):
        super().__init__(f"Column {column!r} not found in input")
        self.column = column


class ParseError(AttributionError):
    """A token could not be parsed, e.g. a non-binary treatment value."""

    code = "parse-error"

    def __init__(self, message: str, row: Optional[int] = None):
        if row is not None:
            message = f"Row {row}: {message}"
        super().__init__(message)
        self.row = row


class EmptyInputError(AttributionError):
    code = "empty-input"


class ArgumentError(AttributionError):
    code = "argument-error"


class DivergedError(AttributionError):
    """IRLS did not converge; the last iterate is kept for the caller."""

    code = "diverged"

    def __init__(self, message: str, coefficients: Optional[np.ndarray] = None):
        super().__init__(message)
        self.coefficients = coefficients


class DegenerateTargetError(AttributionError):
    code = "degenerate-target"


class UnestimableArmError(AttributionError):
    code = "unestimable-arm"


class NoTreatedCasesError(AttributionError):
    code = "no-treated-cases"


class DegenerateDenominatorError(AttributionError):
    code = "degenerate-denominator"


class WrongVariantError(AttributionError):
    code = "wrong-variant"


class RegistryError(AttributionError):
    code = "registry-error"


class DegenerateTruthError(AttributionError):
    code = "degenerate-truth"


class BootstrapError(AttributionError):
    """Too few bootstrap replicates succeeded to estimate a standard error."""

    code = "bootstrap-failed"
