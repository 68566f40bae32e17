"""Loading numeric CSV files and the bundled Iris measurements."""

from __future__ import annotations

import csv
import math
from importlib import resources
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .core import DataSet


class CSVFormatError(ValueError):
    """Malformed CSV input. ``row`` and ``col`` are 1-based file positions when known."""

    def __init__(self, message: str, row: Optional[int] = None, col: Optional[int] = None):
        if row is not None and col is not None:
            message = f"row {row}, column {col}: {message}"
        elif row is not None:
            message = f"row {row}: {message}"
        super().__init__(message)
        self.row = row
        self.col = col


def _parse_rows(lines, has_header: bool, source: str) -> DataSet:
    rows = [r for r in csv.reader(lines)]
    # tolerate trailing blank lines, nothing else
    while rows and not any(cell.strip() for cell in rows[-1]):
        rows.pop()
    if not rows:
        raise CSVFormatError(f"{source} is empty")
    names = None
    first = 1
    if has_header:
        names = [c.strip() for c in rows[0]]
        rows = rows[1:]
        first = 2
        if not rows:
            raise CSVFormatError(f"{source} has a header but no data rows")
    width = len(names) if names is not None else len(rows[0])
    values = np.empty((len(rows), width))
    for i, row in enumerate(rows):
        line = i + first
        if len(row) != width:
            raise CSVFormatError(f"expected {width} fields, found {len(row)}", row=line)
        for j, cell in enumerate(row):
            try:
                v = float(cell)
            except ValueError:
                raise CSVFormatError(f"not a number: {cell!r}", row=line, col=j + 1) from None
            if not math.isfinite(v):
                raise CSVFormatError(f"non-finite value {cell!r}", row=line, col=j + 1)
            values[i, j] = v
    return DataSet(values, feature_names=names)


def load_csv(path, has_header: bool = False) -> DataSet:
    """Read a comma-separated numeric matrix.

    Parameters
    ----------
    path : str or path-like
    has_header : bool, default=False
        Treat the first row as column names.

    Raises
    ------
    OSError
        The file cannot be read.
    CSVFormatError
        Empty file, ragged rows, or a cell that is not a finite number.
        Row and column numbers in the message are 1-based and count the header.
    """
    path = Path(path)
    with path.open(newline="") as fh:
        return _parse_rows(fh, has_header, str(path))


def write_csv(data: DataSet, path, header: bool = True) -> None:
    """Write ``data`` with 17 significant digits so that :func:`load_csv` reads it back exactly."""
    with Path(path).open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        if header and data.feature_names is not None:
            writer.writerow(data.feature_names)
        for row in data.points:
            writer.writerow([format(float(v), ".17g") for v in row])


def builtin_iris() -> DataSet:
    """Fisher's Iris measurements: 150 samples, 4 features, in cm."""
    text = resources.files("psocluster").joinpath("data/iris.csv").read_text()
    return _parse_rows(text.splitlines(), True, "iris.csv")


def subset_dims(data: DataSet, offset: int, dims: int) -> DataSet:
    """Keep columns ``[offset, offset + dims)``."""
    if offset < 0 or dims < 1 or offset + dims > data.n_features:
        raise ValueError(
            f"column range [{offset}, {offset + dims}) is outside 0..{data.n_features}"
        )
    names: Optional[Sequence[str]] = None
    if data.feature_names is not None:
        names = data.feature_names[offset:offset + dims]
    return DataSet(data.points[:, offset:offset + dims].copy(), feature_names=names)
