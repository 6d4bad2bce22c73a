"""Exception taxonomy shared across the pipeline.

Each error class carries the process exit code the CLI maps it to, so the
command layer stays a thin translator.
"""


class DwtmError(Exception):
    """Base class for all errors raised by this package."""

    exit_code = 1


class ParseError(DwtmError):
    """CSV input is malformed (ragged rows, empty input)."""

    exit_code = 2


class SchemaError(DwtmError):
    """Schema inference or validation failed (missing target, bad kinds)."""

    exit_code = 3


class MaterializeError(SchemaError):
    """A cell could not be materialized under the active schema."""


class FormatError(SchemaError):
    """A value cannot be rendered within its feature's character budget."""


class DegenerateFeatureError(DwtmError):
    """A vector has zero variance; no correlation is defined."""


class DegenerateTableError(DwtmError):
    """A contingency table is too small or has an empty margin."""


class NoSignalError(DwtmError):
    """Every feature scored zero association; nothing can be laid out."""

    exit_code = 4
