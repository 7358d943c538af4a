import csv
import io
import json
import math
import subprocess
import sys

import pytest

from krawx import cli
from krawx.bikraw import p_matexp
from krawx.rotations import EulerAngles


def run(args, capsys):
    code = cli.main(args)
    out, err = capsys.readouterr()
    return code, out, err


def test_eval_trivial(capsys):
    code, out, _ = run(["eval", "--route", "aomoto", "--N", "0", "--indices", "0,0,0,0"], capsys)
    assert code == 0
    row = next(csv.DictReader(io.StringIO(out)))
    assert float(row["value"]) == 1.0 and row["route"] == "aomoto"


def test_eval_singular_names_entry(capsys):
    code, _, err = run(["eval", "--route", "genfun", "--N", "2", "--indices", "1,0,1,0", "--euler", "0,90,0", "--degrees"], capsys)
    assert code == 2
    assert "R33" in err


@pytest.mark.parametrize("route", cli.ROUTES)
def test_eval_routes_agree(route, capsys):
    args = ["eval", "--N", "3", "--indices", "1,1,0,2", "--euler", "0.4,1.1,-0.6", "--format", "json"]
    code, out, _ = run(args + ["--route", route], capsys)
    assert code == 0
    body = json.loads(out)
    assert body["schema_version"] == cli.SCHEMA_VERSION
    assert body["value"] == pytest.approx(p_matexp(1, 1, 0, 2, 3, EulerAngles(0.4, 1.1, -0.6)), abs=1e-9)


def test_degrees_flag_converts(capsys):
    _, rad, _ = run(["eval", "--N", "2", "--indices", "1,0,0,1", "--euler", f"{math.radians(20)},{math.radians(50)},{math.radians(10)}"], capsys)
    _, deg, _ = run(["eval", "--N", "2", "--indices", "1,0,0,1", "--euler", "20,50,10", "--degrees"], capsys)
    val = lambda text: float(next(csv.DictReader(io.StringIO(text)))["value"])
    assert val(rad) == pytest.approx(val(deg), rel=1e-14)


@pytest.mark.parametrize(
    "args",
    [
        ["validate", "nope"],
        ["frobnicate"],
        ["eval", "--N", "2"],
        ["eval", "--N", "2", "--indices", "3,0,0,0"],
        ["eval", "--N", "2", "--indices", "1,0"],
        ["eval", "--N", "-1", "--indices", "0,0,0,0"],
        ["eval", "--N", "1", "--indices", "0,0,0,0", "--euler", "1,2"],
        ["eval", "--N", "1", "--indices", "0,0,0,0", "--route", "magic"],
        ["validate", "cg", "--tol", "-1"],
        ["table", "cg"],
    ],
)
def test_usage_errors(args, capsys):
    code, _, err = run(args, capsys)
    assert code == 1
    assert "usage error" in err


def test_io_error(tmp_path, capsys):
    code, _, err = run(["table", "--N", "1", "--output", str(tmp_path / "missing" / "t.csv")], capsys)
    assert code == 3 and "I/O" in err


def test_table_shape(capsys):
    _, out, _ = run(["table", "--N", "0"], capsys)
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 1 and float(rows[0]["value"]) == 1.0
    _, out, _ = run(["table", "--N", "2"], capsys)
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 36
    keys = [tuple(int(r[c]) for c in "rsik") for r in rows]
    assert keys == sorted(keys)


def test_table_json(capsys):
    _, out, _ = run(["table", "--N", "1", "--format", "json"], capsys)
    body = json.loads(out)
    assert body["schema_version"] == cli.SCHEMA_VERSION and len(body["rows"]) == 9


def test_csv_uses_17_significant_digits(capsys):
    _, out, _ = run(["table", "--N", "2", "--serial"], capsys)
    for row in csv.DictReader(io.StringIO(out)):
        v = float(row["value"])
        assert row["value"] == format(v, ".17g")


def test_serial_and_threaded_tables_identical(capsys):
    _, a, _ = run(["table", "--N", "3", "--serial"], capsys)
    _, b, _ = run(["table", "--N", "3"], capsys)
    assert a == b


def test_validate_report_keys(capsys):
    code, out, _ = run(["validate", "casimir", "--N-max", "3", "--format", "json"], capsys)
    assert code == 0
    body = json.loads(out)
    assert body["schema_version"] == cli.SCHEMA_VERSION
    for key in ("suite", "cases_run", "max_defect", "pass", "records", "tolerance"):
        assert key in body
    assert body["pass"] is True and body["cases_run"] == len(body["records"]) == 8
    assert set(body["records"][0]) == {"labels", "value", "defect"}


def test_validate_failure_exit_code(capsys):
    code, out, _ = run(["validate", "orthogonality", "--N-max", "3", "--tol", "1e-30", "--format", "json"], capsys)
    assert code == 1
    assert json.loads(out)["pass"] is False


def test_same_seed_same_bytes(capsys):
    args = ["validate", "wigner", "--N-max", "4", "--seed", "11", "--serial", "--format", "json"]
    _, a, _ = run(args, capsys)
    _, b, _ = run(args, capsys)
    assert a == b
    _, c, _ = run(args[:-4] + ["--seed", "12", "--serial", "--format", "json"], capsys)
    assert c != a


@pytest.mark.parametrize(
    "suite,n_max",
    [("cg", 20), ("unitarity", 8), ("cross-route", 3), ("tratnik", 3), ("wavefunction", 2), ("orthogonality", 4)],
)
def test_validate_suites_pass(suite, n_max, capsys):
    code, out, _ = run(["validate", suite, "--N-max", str(n_max), "--format", "json"], capsys)
    body = json.loads(out)
    assert code == 0 and body["pass"], body["max_defect"]


def test_oracle_command(capsys):
    code, out, _ = run(["oracle", "--N", "2", "--indices", "2,0,1,1"], capsys)
    row = next(csv.DictReader(io.StringIO(out)))
    assert code == 0
    assert float(row["real"]) == pytest.approx(0.40423287030598193, abs=1e-14)


def test_console_entry_point_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "krawx", "eval", "--N", "1", "--indices", "1,0,1,0"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0, proc.stderr
    assert proc.stdout.startswith("route,N,r,s,i,k")
    proc = subprocess.run([sys.executable, "-m", "krawx", "validate", "bogus"], capture_output=True, text=True)
    assert proc.returncode == 1
