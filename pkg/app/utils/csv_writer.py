# app/utils/csv_writer.py
from typing import Iterable, Sequence, TextIO

import numpy as np
import pandas as pd

FLOAT_FORMAT = "%.17g"


def format_cell(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(value)
    if isinstance(value, (float, np.floating)):
        return FLOAT_FORMAT % value
    if value is None:
        return ""
    return str(value)


def to_frame(header: Sequence[str], rows: Iterable[Sequence]) -> pd.DataFrame:
    """
    One column per header entry. Boolean columns become true/false and mixed
    columns are formatted cell by cell; numeric columns stay numeric.
    """
    frame = pd.DataFrame([list(row) for row in rows], columns=list(header))
    for column in frame.columns:
        if frame[column].dtype == bool or frame[column].dtype == object:
            frame[column] = frame[column].map(format_cell)
    return frame


def write_csv(stream: TextIO, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    """
    Writes a header row followed by the data rows. Floats use 17 significant
    digits and lines end with LF, so identical inputs give identical bytes.
    """
    to_frame(header, rows).to_csv(
        stream, index=False, float_format=FLOAT_FORMAT, lineterminator="\n", na_rep=""
    )
