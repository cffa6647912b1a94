import io
import json
import subprocess
import sys

import pytest

from ellverify.cli import EXIT_USAGE, main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def test_list():
    code, text = run("list")
    lines = text.splitlines()
    assert code == 0
    assert len(lines) == 21
    assert lines[0].split("  ")[:2] == ["S1", "summation"]
    assert all(len(l.split("  ")) == 4 for l in lines)


@pytest.mark.parametrize("argv", [
    ["verify", "--id", "NOPE"],
    ["verify"],
    ["verify", "--id", "S1", "--n", "5..2"],
    ["verify", "--id", "S1", "--n", "x"],
    ["verify", "--id", "S1", "--nome", "0.1..1.5"],
    ["verify", "--id", "S1", "--trials", "0"],
    ["verify", "--id", "S1", "--prec", "32"],
    ["bogus"],
    [],
])
def test_usage_errors(argv, capsys):
    assert main(argv, io.StringIO()) == EXIT_USAGE
    assert "ellverify:" in capsys.readouterr().err


def test_verify_t5(tmp_path):
    out = tmp_path / "t5.json"
    code, text = run("verify", "--id", "T5", "--trials", "5", "--n", "0..6", "--seed", "7", "--prec", "256",
                     "--out", str(out))
    assert code == 0
    assert text.splitlines()[-1].startswith("PASS: 1 pass")
    doc = json.loads(out.read_text(encoding="utf-8"))
    assert doc["reports"][0]["max_rel_error"] < 1e-30
    assert doc["reports"][0]["config"]["n_range"] == [0, 6]


def test_reports_byte_identical(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        run("verify", "--id", "S", "--trials", "2", "--seed", "11", "--out", str(path))
    assert a.read_bytes() == b.read_bytes()


def test_table_format(tmp_path):
    out = tmp_path / "t.csv"
    code, _ = run("verify", "--id", "P3", "--trials", "2", "--n", "0..3", "--format", "table", "--out", str(out))
    assert code == 0
    rows = out.read_text().splitlines()
    assert rows[0] == "identity_id,trial,n,rel_error,pass"
    assert len(rows) == 1 + 8


def test_precision_from_environment(tmp_path, monkeypatch):
    out = tmp_path / "r.json"
    monkeypatch.setenv("ELLVERIFY_PREC", "384")
    run("verify", "--id", "S2", "--trials", "1", "--out", str(out))
    assert json.loads(out.read_text())["reports"][0]["config"]["precision_bits"] == 384
    run("verify", "--id", "S2", "--trials", "1", "--prec", "320", "--out", str(out))
    assert json.loads(out.read_text())["reports"][0]["config"]["precision_bits"] == 320


def test_fail_exit_status():
    # tolerance below the truncation floor turns exact identities into failures
    code, text = run("verify", "--id", "T2", "--trials", "2", "--tol", "1e-90")
    assert code == 1
    assert "FAIL" in text


@pytest.mark.parametrize("command", ["lint", "limit-check"])
def test_suite_commands(command, tmp_path):
    out = tmp_path / "s.json"
    code, text = run(command, "--out", str(out))
    assert code == 0
    assert text.splitlines()[-1] == "PASS"
    assert json.loads(out.read_text())["verdict"] == "PASS"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "ellverify", "verify", "--id", "NOPE"], capture_output=True, text=True)
    assert proc.returncode == EXIT_USAGE
    assert "NOPE" in proc.stderr
