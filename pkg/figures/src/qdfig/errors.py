"""Error types raised while reading sweep CSVs and rendering figures."""


class FigureError(Exception):
    """Base class for all errors raised by this package."""


class SchemaError(FigureError):
    """A required CSV column is missing or an input file is malformed."""


class EmptyDataError(FigureError):
    """A CSV parsed cleanly but holds no data rows."""


class TransformError(FigureError):
    """An axis transform was asked to act outside its domain."""
