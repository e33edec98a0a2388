"""Exception hierarchy.

Every error class carries a distinct ``exit_code`` so the CLI can map
failures to documented, stable process exit statuses.
"""


class OmcError(Exception):
    """Base class for all library errors."""

    exit_code = 1


class NonPositiveValue(OmcError):
    """A value was zero or negative where only positive values are defined."""

    exit_code = 3


class NotFinite(OmcError):
    """A value was NaN or infinite."""

    exit_code = 4


class InvalidDomain(OmcError):
    """A (vmin, vmax) normalization domain is empty or non-positive."""

    exit_code = 5


class InvalidSpan(OmcError):
    """An exponent span with e_min >= e_max."""

    exit_code = 6


class TooManyBands(OmcError):
    """An exponent span wider than 12 bands; hue nameability degrades."""

    exit_code = 7


class NonConvergence(OmcError):
    """Hue equalization failed to converge (only raised in strict mode)."""

    exit_code = 8


class InvalidRange(OmcError):
    """A value range whose low endpoint exceeds its high endpoint."""

    exit_code = 9


class ParseError(OmcError):
    """Malformed input file; message includes line/row position."""

    exit_code = 10


class SchemaError(OmcError):
    """Required columns or fields are missing from an input file."""

    exit_code = 11


class NoValidRows(OmcError):
    """An input file contained no usable data rows."""

    exit_code = 12


class UnsupportedFormat(OmcError):
    """Unknown file format requested for import or export."""

    exit_code = 13


class EmptyPlot(OmcError):
    """Nothing to render: every row of the series is masked."""

    exit_code = 14


class DomainMismatch(OmcError):
    """An explicit colormap domain excludes every data value."""

    exit_code = 15


class IoError(OmcError):
    """File could not be read or written."""

    exit_code = 16
