"""Exception hierarchy shared by all polarview modules.

Every error carries a stable machine-readable ``code`` that the HTTP
service maps into structured error bodies.
"""

from __future__ import annotations


class PolarViewError(Exception):
    """Base class for all domain errors."""

    code = "error"


class InvariantError(PolarViewError):
    """A domain type was constructed with values violating its invariants."""

    code = "invariant_violation"


class LengthMismatchError(PolarViewError):
    code = "length_mismatch"


class ZeroVarianceError(PolarViewError):
    code = "zero_variance"


class EmptyInputError(PolarViewError):
    code = "empty_input"


class NegativeRadiusError(PolarViewError):
    code = "negative_radius"


class FlavorMismatchError(PolarViewError):
    code = "flavor_mismatch"


class LabelMismatchError(PolarViewError):
    code = "label_mismatch"


class ModelCapExceededError(PolarViewError):
    code = "model_cap_exceeded"


class TooFewModelsError(PolarViewError):
    code = "too_few_models"


class InvalidIntervalError(PolarViewError):
    code = "invalid_interval"


class InvalidRectError(PolarViewError):
    code = "invalid_rect"


class UnknownModelIdError(PolarViewError):
    code = "unknown_model_id"


class VersionMismatchError(PolarViewError):
    code = "version_mismatch"


class TooFewVersionsError(PolarViewError):
    code = "too_few_versions"


class ParseError(PolarViewError):
    code = "parse_error"

    def __init__(self, message: str, row: int | None = None, col: str | None = None):
        super().__init__(message)
        self.row = row
        self.col = col


class MissingReferenceError(PolarViewError):
    code = "missing_reference"


class DuplicateHeaderError(PolarViewError):
    code = "duplicate_header"


class TooManyModelsError(PolarViewError):
    code = "too_many_models"


class UnknownColumnError(PolarViewError):
    code = "unknown_column"


class InconsistentModelsError(PolarViewError):
    code = "inconsistent_models"


class ThemeCapacityExceededError(PolarViewError):
    code = "theme_capacity_exceeded"


class UnknownDatasetError(PolarViewError):
    code = "unknown_dataset"


class UnknownViewError(PolarViewError):
    code = "unknown_view"
