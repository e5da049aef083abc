import json
import subprocess
import sys

import jsonschema
import pytest

from feqlab.cli import REPORT_SCHEMA, SCHEMA, main, parse_points, parse_steps, run
from feqlab.cyclotomic import DomainError
from feqlab.operators import SYMBOLIC
from feqlab.spaces import INF

# (argv, expected exit code)
MATRIX = [
    (["check", "--equation", "knw", "--N", "3", "--expr", "z^2 + 2*zbar"], 0),
    (["check", "--equation", "knw", "--N", "3", "--expr", "-z^2"], 0),
    (["check", "--equation", "knw", "--N", "2", "--expr", "z*zbar"], 1),
    (["check", "--equation", "haruki", "--N", "2", "--expr", "z*zbar"], 0),
    (["check", "--equation", "haruki", "--N", "2", "--expr", "z^2"], 1),
    (["check", "--equation", "frechet", "--N", "3", "--d", "2", "--expr", "x1*x2"], 0),
    (["check", "--equation", "frechet", "--N", "2", "--d", "2", "--expr", "x1*x2"], 1),
    (["check", "--equation", "knw", "--N", "2", "--expr", "z^^2"], 2),
    (["check", "--equation", "knw", "--N", "0", "--expr", "z"], 2),
    (["check", "--equation", "frechet", "--N", "2", "--expr", "x1 + i"], 2),
    (["check", "--equation", "nope", "--N", "2", "--expr", "z"], 2),
    (["expand", "--operator", "knw-average", "--N", "3", "--expr", "z^3"], 0),
    (["expand", "--operator", "haruki-defect", "--N", "2", "--expr", "z^2"], 0),
    (["expand", "--operator", "forward-diff", "--N", "2", "--expr", "x1^2"], 0),
    (["expand", "--operator", "mixed-diff", "--steps", "1,0;0,1", "--expr", "x1*x2"], 0),
    (["expand", "--operator", "djokovic-rhs", "--steps", "1;2", "--expr", "x1^2"], 0),
    (["expand", "--operator", "djokovic-rhs", "--expr", "x1^2"], 2),
    (["verify", "--equation", "knw", "--N", "2", "--max-degree", "4"], 0),
    (["verify", "--equation", "frechet", "--N", "2", "--d", "2", "--max-degree", "4"], 0),
    (["verify", "--equation", "haruki", "--N", "2", "--max-degree", "1"], 2),
    (["djokovic", "--expr", "x1^2*x2", "--steps", "1,0;1/2,2;-1,3"], 0),
    (["djokovic", "--expr", "x1", "--steps", "sym"], 2),
    (["corners", "close", "--points", "2,1"], 0),
    (["corners", "close", "--points", "INF,0", "--cap", "3,3"], 0),
    (["corners", "close", "--points", "INF,0"], 2),
    (["corners", "minimal", "--points", "0,0;1,0;0,1"], 0),
    (["corners", "minimal", "--points", "1,1"], 2),
    (["scan", "--equation", "knw", "--N", "3", "--expr", "z^2"], 0),
    (["scan", "--equation", "nagumo", "--N", "2", "--expr", "z^2"], 1),
    (["scan", "--equation", "knw", "--N", "3", "--builtin", "exp"], 1),
    (["scan", "--equation", "frechet", "--N", "2", "--d", "1", "--expr", "x1", "--grid", "-1,1,5"], 0),
    (["scan", "--equation", "knw", "--N", "3", "--expr", "z", "--grid", "1,0,5"], 2),
    (["scan", "--equation", "knw", "--N", "3"], 2),
    ([], 2),
    (["frobnicate"], 2),
]


@pytest.mark.parametrize("argv, code", MATRIX, ids=[" ".join(a) or "<empty>" for a, _ in MATRIX])
def test_exit_code_matrix(argv, code):
    report, got = run(argv)
    assert got == code, report
    jsonschema.validate(report, REPORT_SCHEMA)
    assert report["schema"] == SCHEMA
    assert json.loads(json.dumps(report)) == report


def test_parse_error_reports_position():
    report, code = run(["check", "--equation", "knw", "--N", "2", "--expr", "z^^2"])
    assert code == 2 and report["error"]["type"] == "ParseError" and report["error"]["position"] == 2


def test_verify_haruki_lists_all_monomials():
    report, code = run(["verify", "--equation", "haruki", "--N", "3", "--max-degree", "6"])
    assert code == 0 and len(report["verdicts"]) == 49 and report["disagreements"] == []


def test_expand_outputs_canonical_text():
    report, _ = run(["expand", "--operator", "knw-average", "--N", "3", "--expr", "z^3"])
    assert report["result"] == "x^3 + y^3"
    report, _ = run(["expand", "--operator", "forward-diff", "--N", "2", "--steps", "1", "--expr", "x1^2"])
    assert report["result"] == "2"


def test_corners_output():
    report, _ = run(["corners", "minimal", "--points", "0,0;1,0;0,1"])
    assert report["corners"] == [[0, 1], [1, 0]]
    report, _ = run(["corners", "close", "--points", "1,1"])
    assert report["count"] == 4


def test_scan_witness_for_nagumo():
    report, _ = run(["scan", "--equation", "nagumo", "--N", "2", "--expr", "z^2"])
    assert report["witness"] is not None and report["max_abs_residual"] >= 1


def test_flag_parsers():
    assert parse_steps("1,0;sym") == [[1, 0], SYMBOLIC]
    assert parse_points("INF,0;1,2") == [(INF, 0), (1, 2)]
    with pytest.raises(DomainError):
        parse_steps("1;;2")
    with pytest.raises(DomainError):
        parse_points("a,b")


def test_main_prints_one_json_document(capsys):
    code = main(["check", "--equation", "knw", "--N", "2", "--expr", "z", "--pretty"])
    out, err = capsys.readouterr()
    assert code == 0 and json.loads(out)["member"] is True
    assert "check: ok" in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "feqlab", "check", "--equation", "knw", "--N", "2", "--expr", "z*zbar"],
                          capture_output=True, text=True)
    assert proc.returncode == 1
    assert json.loads(proc.stdout)["status"] == "negative"


def test_params_echo_the_command_line():
    report, _ = run(["scan", "--equation", "knw", "--N", "3", "--expr", "z", "--grid", "-1,1,3"])
    assert report["params"]["grid"] == "-1,1,3" and report["equation_params"] == {"N": 3}
    report, _ = run(["verify", "--equation", "knw", "--N", "2", "--max-degree", "2"])
    assert report["params"]["max_degree"] == 2
