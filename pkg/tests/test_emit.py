"""CSV and JSON rendering of result tables."""

import json
import math

import pytest

from magnocool.emit import format_cell, render, render_csv, render_json

COLUMNS = ["x", "n_eff", "stable"]
ROWS = [
    [1.0, 0.123456789123, True],
    [2.0, None, False],
]


def test_format_cell_kinds():
    assert format_cell(None, 9) == ""
    assert format_cell(True, 9) == "true"
    assert format_cell(False, 9) == "false"
    assert format_cell(1.0, 9) == "1"
    assert format_cell(0.123456789123, 9) == "0.123456789"
    assert format_cell(0.123456789123, 3) == "0.123"
    assert format_cell(float("nan"), 9) == ""


def test_render_csv_layout():
    text = render_csv(COLUMNS, ROWS, 9, footer={"g0_opt": 3.0})
    lines = text.split("\n")
    assert lines[0] == "x,n_eff,stable"
    assert lines[1] == "1,0.123456789,true"
    assert lines[2] == "2,,false"
    assert lines[3].startswith("# ")
    assert json.loads(lines[3][2:]) == {"g0_opt": 3.0}
    assert lines[4] == ""  # trailing newline
    assert "\r" not in text


def test_render_csv_without_footer():
    text = render_csv(COLUMNS, ROWS, 9)
    assert "#" not in text
    assert text.endswith("false\n")


def test_render_json_shape():
    body = json.loads(render_json(COLUMNS, ROWS, 9, footer={"k": "v"}))
    assert body["summary"] == {"k": "v"}
    # floats are rounded to the requested significant digits
    assert body["rows"][0] == {"x": 1.0, "n_eff": 0.123456789, "stable": True}
    assert body["rows"][1]["n_eff"] is None


def test_render_dispatch():
    assert render("csv", COLUMNS, ROWS, 9, None) == render_csv(COLUMNS, ROWS, 9, None)
    assert render("json", COLUMNS, ROWS, 9, None) == render_json(COLUMNS, ROWS, 9, None)
    with pytest.raises(ValueError):
        render("yaml", COLUMNS, ROWS, 9, None)


def test_render_json_precision_applies_to_floats():
    body = json.loads(render_json(["v"], [[math.pi]], 4))
    assert body["rows"][0]["v"] == float(f"{math.pi:.4g}")


def test_render_is_deterministic():
    once = render_csv(COLUMNS, ROWS, 9, footer={"a": 1.0, "b": True})
    again = render_csv(COLUMNS, ROWS, 9, footer={"a": 1.0, "b": True})
    assert once == again
