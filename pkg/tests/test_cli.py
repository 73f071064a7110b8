"""Command-line surface: formats, determinism, exit codes, config precedence."""

import csv
import io
import json

import pytest

from qhermite.cli import RunConfig, main, resolve_config


def run(capsys, *argv):
    code = main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_run_config_validation():
    with pytest.raises(ValueError):
        RunConfig(precision_digits=10)
    with pytest.raises(ValueError):
        RunConfig(fmt="xml")
    with pytest.raises(ValueError):
        RunConfig(rel_tol=0.0)


def test_eval_human_value(capsys):
    code, out, err = run(capsys, "--no-timestamp", "eval", "gdqh2",
                         "--n", "2", "--q", "0.5", "--alpha", "0",
                         "--x", "1", "--y", "1")
    assert code == 0 and err == ""
    assert "value=-3.3333333333333333333333333333333333333333333333333e-1" in out
    assert "representation=definition_sum" in out


def test_eval_json_shape(capsys):
    code, out, _ = run(capsys, "--no-timestamp", "--format", "json",
                       "eval", "gdqh2", "--n", "2", "--q", "0.5",
                       "--alpha", "0", "--x", "1", "--y", "1")
    assert code == 0
    doc = json.loads(out)
    assert "timestamp" not in doc
    row = doc["rows"][0]
    assert row["family"] == "gdqh2" and row["n"] == "2"
    assert row["value"].startswith("-3.33333333333333")


def test_determinism_all_formats(capsys):
    for fmt in ("human", "json", "csv"):
        argv = ("--no-timestamp", "--format", fmt, "table", "discrete-qh2",
                "--n-max", "4", "--x", "0.7", "--x", "1.3", "--q", "0.5")
        _, first, _ = run(capsys, *argv)
        _, second, _ = run(capsys, *argv)
        assert first == second and first  # byte-identical reruns


def test_timestamp_lines_differ_from_stripped(capsys):
    argv = ("--format", "human", "eval", "gdqh2", "--n", "0", "--q", "0.5",
            "--alpha", "0", "--x", "1", "--y", "1")
    _, out, _ = run(capsys, *argv)
    assert out.splitlines()[0].startswith("# ")
    _, bare, _ = run(capsys, "--no-timestamp", *argv)
    assert not bare.startswith("#")


def test_table_discrete_family(capsys):
    code, out, _ = run(capsys, "--no-timestamp", "--format", "csv",
                       "table", "discrete-qh2", "--n-max", "1",
                       "--x", "0.7", "--q", "0.5")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["n"] for r in rows] == ["0", "1"]
    assert rows[0]["value"].startswith("1.0000")
    assert rows[1]["value"].startswith("7.0000")
    assert out.splitlines()[0] == "n,x,value,representation"


def test_check_small_grid_passes(capsys):
    code, out, _ = run(capsys, "--no-timestamp", "check", "recurrence",
                       "--q", "0.5", "--alpha", "0", "--n-max", "3",
                       "--x", "0.8", "--y", "1", "--t", "0.2",
                       "--omega", "0.6")
    assert code == 0
    assert "summary: total=4 passed=4 failed=0 errors=0" in out


def test_check_full_suite_enumerates_identities(capsys):
    code, out, _ = run(capsys, "--no-timestamp", "check", "all",
                       "--q", "0.5", "--alpha", "0.3", "--n-max", "4",
                       "--x", "1.2", "--y", "0.4", "--t", "0.25",
                       "--omega", "0.9")
    assert code == 0
    seen = {line.split()[0].split("=", 1)[1]
            for line in out.splitlines() if line.startswith("identity=")}
    assert len(seen) >= 6
    assert {"recurrence", "connection", "inversion",
            "generating_function"} <= seen


def test_check_invalid_q_exit_two(capsys):
    code, out, err = run(capsys, "check", "all", "--q", "1.5")
    assert code == 2
    assert "q out of range (0,1)" in err


def test_check_tight_tol_exit_one(capsys):
    code, _, _ = run(capsys, "--no-timestamp", "--rel-tol", "1e-90",
                     "check", "recurrence", "--q", "0.5", "--alpha", "0",
                     "--n-max", "3", "--x", "0.8", "--y", "1",
                     "--t", "0.2", "--omega", "0.6")
    assert code == 1


def test_orthogonality_single_pair(capsys):
    code, out, _ = run(capsys, "--no-timestamp", "orthogonality",
                       "--q", "0.5", "--alpha", "0", "--n", "1", "--m", "1")
    assert code == 0
    assert "passed=true" in out


def test_config_file_and_flag_precedence(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("format=csv\nprecision=30\n")
    code, out, _ = run(capsys, "--no-timestamp", "--config", str(cfg),
                       "eval", "gdqh2", "--n", "1", "--q", "0.5",
                       "--alpha", "0", "--x", "1", "--y", "1")
    assert code == 0
    assert out.splitlines()[0].startswith("family,")    # config picked csv
    assert "6.66666666666666666666666666667e-1" in out  # 30 digits, not 50
    # explicit flag outranks the file
    code, out, _ = run(capsys, "--no-timestamp", "--config", str(cfg),
                       "--format", "json", "eval", "gdqh2", "--n", "1",
                       "--q", "0.5", "--alpha", "0", "--x", "1", "--y", "1")
    assert code == 0
    assert json.loads(out)["rows"][0]["family"] == "gdqh2"


def test_config_unknown_key_rejected(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("bogus=1\n")
    code, _, err = run(capsys, "--config", str(cfg), "eval", "gdqh2",
                       "--n", "1", "--q", "0.5", "--alpha", "0",
                       "--x", "1", "--y", "1")
    assert code == 2
    assert "unknown config key" in err


def test_eval_invalid_degree_exit_two(capsys):
    code, _, err = run(capsys, "eval", "gdqh2", "--n", "-2", "--q", "0.5",
                       "--alpha", "0", "--x", "1", "--y", "1")
    assert code == 2
    assert "degree" in err


def test_resolve_config_defaults():
    import argparse
    ns = argparse.Namespace(config=None, precision=None, rel_tol=None,
                            tail_tol=None, format=None, no_timestamp=True)
    cfg = resolve_config(ns)
    assert cfg.precision_digits == 50
    assert cfg.fmt == "human"
    assert cfg.timestamp is False
