import json
import os

import pytest

from twistmin import cli


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_trace_tau(capsys):
    code, out, _ = run_cli(capsys, "trace", "--level", "1", "--weight", "12",
                           "--character", "1.1", "--kind", "min",
                           "--nmax", "5")
    assert code == 0
    data = json.loads(out)
    vals = [rec["value"]["coeffs"][0][0] for rec in data["records"]]
    assert vals == [1, -24, 252, -1472, 4830]
    for rec in data["records"]:
        v = rec["value"]
        assert set(v) == {"order", "coeffs", "approx"}
        assert all(len(pair) == 2 for pair in v["coeffs"])
        assert len(v["approx"]) == 2


def test_trace_parity_zeros(capsys):
    code, out, _ = run_cli(capsys, "trace", "--level", "4", "--weight", "3",
                           "--character", "4.1", "--kind", "min",
                           "--nmax", "5", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "n,value_pretty,order,coeffs"
    assert all(line.split(",")[1] == "0" for line in lines[1:])


def test_trace_full_genus(capsys):
    code, out, _ = run_cli(capsys, "trace", "--level", "11", "--weight", "2",
                           "--character", "11.1", "--kind", "full",
                           "--nmax", "1")
    assert code == 0
    data = json.loads(out)
    assert data["records"][0]["value"]["coeffs"][0] == [1, 1]


def test_dim(capsys):
    code, out, _ = run_cli(capsys, "dim", "--level", "22", "--weight", "2",
                           "--character", "22.1", "--kind", "full")
    assert code == 0
    assert out.strip() == "2"


def test_determinism(capsys):
    args = ("basis", "--level", "22", "--weight", "2", "--character", "22.1",
            "--kind", "full")
    code1, out1, _ = run_cli(capsys, *args)
    code2, out2, _ = run_cli(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2


def test_verify_pass(capsys):
    code, out, _ = run_cli(capsys, "trace", "--level", "9", "--weight", "4",
                           "--character", "9.1", "--kind", "min",
                           "--nmax", "6", "--verify")
    assert code == 0
    assert json.loads(out)["verified"] is True


def test_verify_mismatch_exit_code(capsys, monkeypatch):
    from twistmin import oracle
    from twistmin.cyclo import rational

    monkeypatch.setattr(oracle, "trace_min_sieved",
                        lambda *a, **k: rational(999))
    code, _, err = run_cli(capsys, "trace", "--level", "11", "--weight", "2",
                           "--character", "11.1", "--kind", "min",
                           "--nmax", "1", "--verify")
    assert code == 3
    assert "verification" in err


def test_usage_errors(capsys):
    code, _, err = run_cli(capsys, "trace", "--level", "11", "--weight", "2",
                           "--character", "13.1", "--kind", "min", "--nmax", "1")
    assert code == 2 and "error" in err
    code, _, err = run_cli(capsys, "trace", "--level", "16", "--weight", "2",
                           "--character", "16.1", "--kind", "min", "--nmax", "1")
    assert code == 2  # non-twist-minimal character for kind=min
    code, _, err = run_cli(capsys, "dim", "--level", "11", "--weight", "1",
                           "--character", "11.1", "--kind", "full")
    assert code == 2  # weight below 2


def test_newform_coeffs(capsys):
    code, out, _ = run_cli(capsys, "newform-coeffs", "--level", "11",
                           "--weight", "2", "--character", "11.1",
                           "--kind", "min", "--psi", "3.2", "--nmax", "7")
    assert code == 0
    data = json.loads(out)
    assert data["level"] == 99
    vals = [rec["value"]["coeffs"][0][0] for rec in data["records"]]
    assert vals[:7] == [1, 2, 0, 2, -1, 0, -2]


def test_class_numbers_cache(capsys, tmp_path, monkeypatch):
    path = tmp_path / "classnumbers.txt"
    monkeypatch.setenv(cli.CLASS_CACHE_ENV, str(path))
    code, out, _ = run_cli(capsys, "class-numbers", "--min", "-200")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) >= 50
    assert lines[0] == "-3,1,6"
    ds = [int(line.split(",")[0]) for line in lines]
    assert ds == sorted(ds, key=abs)
    assert path.read_text().strip().splitlines() == lines


def test_selftest(capsys):
    code, out, _ = run_cli(capsys, "selftest", "--max-level", "6",
                           "--weights", "2,3", "--nmax", "3")
    assert code == 0
    assert out.startswith("PASS")
