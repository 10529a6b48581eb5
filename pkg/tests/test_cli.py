"""Command-line harness: flag parsing, exit-status contract, determinism of
reports and tables, and serialization round-trips."""

import csv
import io
import json
from contextlib import redirect_stderr, redirect_stdout
from fractions import Fraction as F

import pytest

from alde.cli import main
from alde.operators import AlgElem


def run_cli(argv):
    out, err = io.StringIO(), io.StringIO()
    try:
        with redirect_stdout(out), redirect_stderr(err):
            code = main(argv)
    except SystemExit as exc:   # argparse errors
        code = exc.code
    return code, out.getvalue(), err.getvalue()


def test_verify_jacobi_exit_zero():
    code, out, _ = run_cli(["verify", "jacobi", "--alpha", "1/2",
                            "--beta", "0", "--nmax", "6", "--no-timings"])
    assert code == 0
    doc = json.loads(out)
    assert doc["pass"] is True
    assert all(rec["pass"] for rec in doc["records"])


def test_usage_error_on_inconsistent_flags():
    code, _, err = run_cli(["verify", "krall", "--beta", "2", "--k", "3"])
    assert code == 2
    assert "exceeds beta" in err


def test_invalid_rational_flag():
    code, _, _ = run_cli(["verify", "jacobi", "--alpha", "abc"])
    assert code == 2


def test_runtime_error_exits_one():
    # gamma_1 != 1 makes the mixed-form context invalid: failure, not usage
    code, _, err = run_cli(["verify", "orth", "--d", "2",
                            "--gamma", "1/2,0,0", "--a0", "1", "--nmax", "2"])
    assert code == 1


def test_table_q_contains_transformed_row(tmp_path):
    path = tmp_path / "q.csv"
    code, _, _ = run_cli(["table", "q", "--alpha", "0", "--beta", "1",
                          "--a0", "1", "--nmax", "3", "--out", str(path)])
    assert code == 0
    rows = list(csv.reader(path.read_text().splitlines()))
    assert rows[0][:2] == ["n", "c0"]
    assert rows[1] == ["0", "1", "0", "0", "0"]
    assert rows[2] == ["1", "3", "-12", "0", "0"]
    assert len(rows) == 5


def test_table_determinism(tmp_path):
    args = ["table", "Q", "--d", "2", "--gamma", "1,0,0", "--k", "1",
            "--a0", "1", "--nmax", "2"]
    p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run_cli(args + ["--out", str(p1)])[0] == 0
    assert run_cli(args + ["--out", str(p2)])[0] == 0
    assert p1.read_bytes() == p2.read_bytes()


def test_report_determinism(tmp_path):
    args = ["verify", "simplex", "--d", "2", "--gamma", "1,0,0",
            "--k", "1", "--a0", "1", "--nmax", "2", "--no-timings"]
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    assert run_cli(args + ["--out", str(p1)])[0] == 0
    assert run_cli(args + ["--out", str(p2)])[0] == 0
    assert p1.read_bytes() == p2.read_bytes()
    # with timings on, everything except the timing field still agrees
    p3, p4 = tmp_path / "c.json", tmp_path / "d.json"
    base = args[:-1]
    assert run_cli(base + ["--out", str(p3)])[0] == 0
    assert run_cli(base + ["--out", str(p4)])[0] == 0
    d3, d4 = json.loads(p3.read_text()), json.loads(p4.read_text())
    d3.pop("timings"), d4.pop("timings")
    assert d3 == d4


def test_empty_table_has_header_and_origin_row(tmp_path):
    path = tmp_path / "t.csv"
    code, _, _ = run_cli(["table", "simplex", "--d", "2",
                          "--gamma", "1,0,0", "--nmax", "0",
                          "--out", str(path)])
    assert code == 0
    rows = list(csv.reader(path.read_text().splitlines()))
    assert len(rows) == 2
    assert rows[1][0] == "0,0"


def test_operator_export_round_trip(tmp_path):
    path = tmp_path / "ops.json"
    code, _, _ = run_cli(["table", "operators", "--alpha", "0",
                          "--beta", "1", "--k", "1", "--a0", "1",
                          "--out", str(path)])
    assert code == 0
    doc = json.loads(path.read_text())
    elem = AlgElem.from_json(doc["B_f2"])
    assert json.dumps(elem.to_json(), sort_keys=True) == \
        json.dumps(doc["B_f2"], sort_keys=True)
    assert elem.wordlen() == 4
    assert AlgElem.from_json(doc["Bpsi"]).wordlen() == 2


def test_gram_table_symmetric(tmp_path):
    path = tmp_path / "gram.csv"
    code, _, _ = run_cli(["table", "gram", "--d", "2", "--gamma", "1,0,0",
                          "--k", "1", "--a0", "1", "--nmax", "2",
                          "--out", str(path)])
    assert code == 0
    rows = list(csv.reader(path.read_text().splitlines()))
    labels = rows[0][1:]
    body = {r[0]: r[1:] for r in rows[1:]}
    for i, li in enumerate(labels):
        for j, lj in enumerate(labels):
            assert body[li][j] == body[lj][i]
            if li != lj:
                assert body[li][j] == "0"
            else:
                assert body[li][j] != "0"


def test_krall_synth_output():
    code, out, _ = run_cli(["krall", "synth", "--alpha", "0", "--beta", "1",
                            "--k", "1", "--a0", "1", "--f", "f2"])
    assert code == 0
    doc = json.loads(out)
    assert doc["certification"]["intertwining_residual_zero"] is True
    assert doc["certification"]["wordlen"] == 4


def test_threaded_run_matches_serial(tmp_path, monkeypatch):
    args = ["verify", "jacobi", "--alpha", "0", "--beta", "1",
            "--nmax", "6", "--no-timings"]
    code1, out1, _ = run_cli(args)
    monkeypatch.setenv("ALDE_THREADS", "4")
    code2, out2, _ = run_cli(args)
    assert code1 == code2 == 0
    assert out1 == out2
