"""Column-oriented CSV reading for the sweep-output schema.

The upstream CLI writes comma-separated files with a single header row,
dot-decimal floats, and no timestamps. This module parses them into numpy
column arrays and enforces the columns each figure needs.
"""

from __future__ import annotations

import csv

import numpy as np

from .errors import EmptyDataError, SchemaError

SPECTRUM_COLUMNS = ("g", "epsilon", "sector", "level", "E_rel", "gap")
ENTANGLEMENT_COLUMNS = (
    ("g", "epsilon", "sector")
    + tuple(f"lambda{i}" for i in range(8))
    + ("S_vn", "L_lin", "completeness")
)
ASYMPTOTIC_COLUMNS = (
    ("epsilon",)
    + tuple(f"lambda{i}" for i in range(8))
    + ("L_closed", "L_spectrum", "S_vn")
)

STRING_COLUMNS = frozenset({"sector"})


def read_table(path: str, required: tuple[str, ...]) -> dict[str, np.ndarray]:
    """Read a CSV into a dict of column arrays, checking required columns.

    String columns stay as object arrays; everything else becomes float64.
    Raises SchemaError naming the first missing column, EmptyDataError when
    the file has a header but no rows.
    """
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise SchemaError(f"{path}: file is empty, expected a header row")
    header = rows[0]
    for column in required:
        if column not in header:
            raise SchemaError(f"{path}: missing required column {column!r}")
    body = rows[1:]
    if not body:
        raise EmptyDataError(f"{path}: no data rows")
    table: dict[str, np.ndarray] = {}
    for j, column in enumerate(header):
        cells = [row[j] for row in body]
        if column in STRING_COLUMNS:
            table[column] = np.array(cells, dtype=object)
        else:
            try:
                table[column] = np.array([float(c) for c in cells])
            except ValueError as exc:
                raise SchemaError(f"{path}: column {column!r} is not numeric: {exc}") from exc
    return table
