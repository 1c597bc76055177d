# tests/test_csv_writer.py
import io

from app.utils.csv_writer import format_cell, to_frame, write_csv


def _write(header, rows):
    buf = io.StringIO()
    write_csv(buf, header, rows)
    return buf.getvalue()


def test_numeric_table_uses_full_precision():
    text = _write(["n", "err"], [(9, 0.1), (17, 1.0 / 3.0)])
    assert text == "n,err\n9,0.10000000000000001\n17,0.33333333333333331\n"


def test_boolean_column_is_lowercase():
    text = _write(["n", "passed"], [(9, True), (33, False)])
    assert text.splitlines() == ["n,passed", "9,true", "33,false"]


def test_mixed_column_is_formatted_per_cell():
    rows = [("weight", "w2"), ("n", 9), ("h_sep", 0.5), ("applicable", True), ("e1", None)]
    lines = _write(["quantity", "value"], rows).splitlines()
    assert lines == ["quantity,value", "weight,w2", "n,9", "h_sep,0.5", "applicable,true", "e1,"]


def test_empty_table_writes_the_header():
    assert _write(["iteration", "energy"], []) == "iteration,energy\n"


def test_frame_keeps_numeric_columns_numeric():
    frame = to_frame(["n", "a"], [(1, -0.5), (2, 0.5)])
    assert frame["n"].dtype.kind == "i"
    assert frame["a"].dtype.kind == "f"


def test_format_cell():
    assert format_cell(False) == "false"
    assert format_cell(3) == "3"
    assert format_cell(0.1) == "0.10000000000000001"
    assert format_cell(None) == ""
