"""Static figure rendering for qdot2e sweep CSVs."""

from .errors import EmptyDataError, FigureError, SchemaError, TransformError
from .reader import (
    ASYMPTOTIC_COLUMNS,
    ENTANGLEMENT_COLUMNS,
    SPECTRUM_COLUMNS,
    read_table,
)
from .render import (
    FIGURE_IDS,
    FigureSpec,
    RenderReport,
    default_specs,
    ln_eps_minus_1,
    ln_g,
    render,
)

__all__ = [
    "ASYMPTOTIC_COLUMNS",
    "ENTANGLEMENT_COLUMNS",
    "EmptyDataError",
    "FIGURE_IDS",
    "FigureError",
    "FigureSpec",
    "RenderReport",
    "SPECTRUM_COLUMNS",
    "SchemaError",
    "TransformError",
    "default_specs",
    "ln_eps_minus_1",
    "ln_g",
    "read_table",
    "render",
]
