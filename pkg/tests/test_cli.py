import io
import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from germ_forge import serialize as ser
from germ_forge.cli import EXIT_NEGATIVE, EXIT_OK, EXIT_UNKNOWN, EXIT_USAGE, run

SCHEMA = json.loads((Path(__file__).parent.parent / "docs" / "schema.json").read_text())

CASES = [
    (["cascade", "--vars", "x,y,z", "--poly", "z^2 - x*y^4", "--order", "12", "--seed", "7"], EXIT_OK),
    (["deform", "--vars", "x,y,z", "--poly", "z^2 - x*y^4", "--order", "12", "--seed", "7", "--m", "5"], EXIT_OK),
    (["check-equising", "--vars", "x,y,z", "--poly", "z^2 - x*y^4", "--seed", "7"], EXIT_OK),
    (["check-equising", "--vars", "x,y,z", "--poly", "z^2 - x*y^4", "--seed", "7", "--m", "3"], EXIT_NEGATIVE),
    (["check-equising", "--vars", "x,y,z", "--poly", "z^2 - x*(y^4 + x^7)", "--seed", "7", "--m", "6"], EXIT_UNKNOWN),
    (["check-equising", "--vars", "x1,x2", "--order", "10", "--member", "x2^2 - x1^2*(x1 + t)",
      "--member", "x1^3 + t*x1^2", "--member", "1"], EXIT_NEGATIVE),
    (["discriminants", "--vars", "x,y", "--poly", "y^5 + x*y^4"], EXIT_OK),
    (["arc-member", "--vars", "x,y,z", "--poly", "z^2 - x*y^4", "--arc", "t,0,0", "--m", "1", "--K", "12"], EXIT_OK),
    (["arc-member", "--vars", "x,y,z", "--poly", "z^2 - x*(y^4 + x^6)", "--arc", "t,0,0", "--m", "1",
      "--K", "12", "--field", "real"], EXIT_NEGATIVE),
    (["arc-member", "--vars", "x,z", "--poly", "z^2 + x^4", "--arc", "t,0", "--m", "1", "--K", "8",
      "--field", "complex"], EXIT_OK),
    (["arc-member", "--vars", "x,z", "--poly", "z^2 - x^3", "--arc", "t^2,0", "--m", "2", "--K", "3"], EXIT_UNKNOWN),
    (["arc-compare", "--vars", "x,y,z", "--poly", "z^2 - x*y^4", "--other", "z^2 - x*(y^4 + x^6)",
      "--arc", "t,0,0", "--arc", "0,0,t", "--m", "1", "--K", "12"], EXIT_OK),
    (["tangency", "--vars", "x1,x2", "--tau", "x1", "--delta", "1", "--m", "3"], EXIT_OK),
    (["tangency", "--vars", "x1,x2", "--tau", "x1", "--m", "3", "--arc", "t,0", "--K", "5"], EXIT_OK),
]

ERRORS = [
    (["cascade", "--vars", "x,y,z", "--poly", "z^2 - w"], EXIT_USAGE),
    (["cascade", "--vars", "x,y,z", "--poly", "z^2 +"], EXIT_USAGE),
    (["arc-member", "--vars", "x,y", "--poly", "i*x", "--arc", "t,0", "--m", "1", "--K", "3"], EXIT_USAGE),
    (["frobnicate"], EXIT_USAGE),
    ([], EXIT_USAGE),
    (["tangency", "--vars", "x1,x2", "--tau", "1 + x1", "--m", "3"], EXIT_USAGE),
    (["tangency", "--vars", "x1,x2", "--tau", "x1", "--delta", "-1", "--m", "3"], EXIT_USAGE),
    (["check-equising", "--vars", "x1,x2", "--member", "x2^2", "--member", "1"], EXIT_USAGE),
    (["cascade", "--vars", "x,y,z", "--poly", "z^2 - x*y^4", "--order", "1"], EXIT_UNKNOWN),
    (["deform", "--vars", "x,y,z", "--poly", "z^2 - x*y^4", "--order", "6", "--m", "6"], EXIT_USAGE),
]


def invoke(argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize("argv, expected", CASES, ids=[" ".join(c[0][:2]) + f"-{i}" for i, c in enumerate(CASES)])
def test_exit_codes_and_schema(argv, expected):
    code, out, _ = invoke(argv)
    assert code == expected
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMA)
    assert doc["schema"] == ser.SCHEMA
    ser.from_json(doc)


@pytest.mark.parametrize("argv, expected", ERRORS)
def test_error_exit_codes(argv, expected):
    code, out, err = invoke(argv)
    assert code == expected
    doc = json.loads(out)
    assert doc["kind"] == "error" and doc["exit_code"] == expected
    jsonschema.validate(doc, SCHEMA)
    assert err


def test_parse_error_reports_position():
    _, _, err = invoke(["cascade", "--vars", "x,y,z", "--poly", "z^2 - w"])
    assert "line 1, column 7" in err


def test_cascade_worked_example_json():
    _, out, _ = invoke(CASES[0][0])
    doc = json.loads(out)
    assert doc["degrees"] == [2, 5, 2, 0]
    assert doc["indices"] == [1, 4, 2]


def test_tangency_json():
    _, out, _ = invoke(CASES[12][0])
    doc = json.loads(out)
    assert doc["order"] == 3 and doc["holds"] is True
    assert doc["map"] == ["x1", "x1^3 + x2"]


def test_output_is_deterministic():
    for argv, _ in CASES:
        assert invoke(argv)[1] == invoke(argv)[1]


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "germ_forge", "tangency", "--vars", "x1,x2", "--tau", "x1", "--m", "2"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["order"] == 2
