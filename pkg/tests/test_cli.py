import json

import pytest

from prymverify import cli


def run_cli(tmp_path, *argv):
    out = tmp_path / "report.json"
    code = cli.main([*argv, "--out", str(out)])
    report = json.loads(out.read_text(encoding="utf-8")) if out.exists() else None
    return code, report


def test_verify_traces_f7(tmp_path):
    code, rep = run_cli(tmp_path, "verify-traces", "--p", "7", "--lambda", "all")
    assert code == 0
    rows = [r for r in rep["rows"] if r["id"] == "trace_additivity"]
    assert sorted(r["inputs"]["lambda"] for r in rows) == ["2", "3", "4", "5", "6"]
    assert all(r["status"] == "pass" for r in rep["rows"])
    assert rep["schema"] == cli.SCHEMA


def test_bounds_single_row(tmp_path):
    code, rep = run_cli(tmp_path, "bounds", "--g", "1", "--degk", "1", "--h", "1", "--dimb", "1")
    assert code == 0
    assert [r["id"] for r in rep["rows"]] == ["isogeny_factor_height_bound"]
    assert rep["summary"] == {"passed": 1, "failed": 0, "skipped": 0}


def test_bounds_with_snowden(tmp_path):
    code, rep = run_cli(tmp_path, "bounds", "--snowden", "2,3")
    assert code == 0 and len(rep["rows"]) == 2


def test_report_has_lf_endings_and_required_fields(tmp_path):
    run_cli(tmp_path, "bounds")
    raw = (tmp_path / "report.json").read_bytes()
    assert b"\r\n" not in raw and raw.endswith(b"\n")
    rep = json.loads(raw)
    assert set(rep) >= {"tool_version", "config", "rows", "summary", "timings"}
    assert set(rep["rows"][0]) >= {"id", "inputs", "expected", "actual", "status", "tolerance"}


def test_no_suite_is_a_config_error(tmp_path, capsys):
    code, rep = run_cli(tmp_path)
    assert code == 2 and rep is None
    assert "suite" in capsys.readouterr().err


def test_empty_suite_in_config(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("suite = ,\n")
    assert run_cli(tmp_path, "--config", str(cfg))[0] == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["verify-traces", "--p", "5"],
        ["verify-traces", "--p", "8"],
        ["verify-traces", "--p", "7", "--lambda", "x"],
        ["bounds", "--dimb", "3", "--g", "2"],
        ["all", "--jobs", "0"],
        ["all", "--config", "/nonexistent/run.cfg"],
        ["dickson", "--gens", "/nonexistent.json"],
    ],
)
def test_bad_arguments_exit_2(tmp_path, argv):
    assert run_cli(tmp_path, *argv)[0] == 2


def test_unknown_config_key(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("p = 7\ncolour = blue\n")
    assert run_cli(tmp_path, "verify-traces", "--config", str(cfg))[0] == 2


def test_config_file_values_and_cli_override(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# traces only\nsuite = traces\np = 13\nlambda = 2,3\n")
    code, rep = run_cli(tmp_path, "--config", str(cfg))
    assert code == 0
    assert {r["inputs"]["q"] for r in rep["rows"] if r["id"] == "trace_additivity"} == {13}
    code, rep = run_cli(tmp_path, "--config", str(cfg), "--p", "7")
    assert {r["inputs"]["q"] for r in rep["rows"] if r["id"] == "trace_additivity"} == {7}


def test_internal_error_exit_3(tmp_path, monkeypatch):
    def boom(cfg):
        raise RuntimeError("kaput")

    monkeypatch.setitem(cli.SUITE_FUNCS, "bounds", boom)
    assert run_cli(tmp_path, "bounds")[0] == 3


def test_failure_exit_1(tmp_path):
    # one Frobenius element cannot span: span_check fails
    spec = tmp_path / "fs.json"
    spec.write_text(json.dumps({
        "permutations": [[1, 0, 2], [1, 2, 0]],
        "rho": [[["6", "1"], ["0", "1"]], [["0", "6"], ["1", "6"]]],
        "rho_prime": [[["6", "1"], ["0", "1"]], [["0", "6"], ["1", "6"]]],
        "frob": [[]],
    }))
    code, rep = run_cli(tmp_path, "faltings-serre", "--ring", "F_7", "--spec", str(spec))
    assert code == 1
    status = {r["id"]: r["status"] for r in rep["rows"]}
    assert status == {"span_check": "fail", "trace_conclusion": "skip"}


def test_faltings_serre_spec_passes(tmp_path):
    spec = tmp_path / "fs.json"
    spec.write_text(json.dumps({
        "permutations": [[1, 0, 2], [1, 2, 0]],
        "rho": [[["6", "1"], ["0", "1"]], [["0", "6"], ["1", "6"]]],
        "rho_prime": [[["6", "1"], ["0", "1"]], [["0", "6"], ["1", "6"]]],
        "frob": [[], [0], [1], [1, 0]],
    }))
    code, rep = run_cli(tmp_path, "faltings-serre", "--ring", "F_7", "--spec", str(spec))
    assert code == 0
    assert all(r["status"] == "pass" for r in rep["rows"])


def test_dickson_gens_file(tmp_path):
    gens = tmp_path / "gens.json"
    # SL2(F_5) inside GL2(F_25)
    gens.write_text(json.dumps([[["1", "1"], ["0", "1"]], [["0", "4"], ["1", "0"]]]))
    code, rep = run_cli(tmp_path, "dickson", "--q", "25", "--gens", str(gens))
    assert code == 0
    row = next(r for r in rep["rows"] if r["id"] == "dickson_classify")
    assert "ContainsSL2" in row["actual"]
    assert any(r["id"] == "taylor_wiles" for r in rep["rows"])


def test_calibrate_persists_then_verifies(tmp_path):
    cfg = tmp_path / "calib.cfg"
    code, rep = run_cli(tmp_path, "calibrate", "--config", str(cfg))
    assert code == 0
    assert {r["inputs"]["mode"] for r in rep["rows"]} == {"search"}
    text = cfg.read_text()
    assert "normalization = 0" in text and "t_prime = 0" in text
    code, rep = run_cli(tmp_path, "calibrate", "--config", str(cfg))
    assert code == 0
    assert {r["inputs"]["mode"] for r in rep["rows"]} == {"verify"}
    assert cfg.read_text() == text


def strip_timings(path):
    rep = json.loads(path.read_text())
    rep.pop("timings")
    return json.dumps(rep, sort_keys=True)


def test_reports_are_byte_identical_apart_from_timings(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    a.mkdir(), b.mkdir()
    argv = ["verify-charsums", "--p", "7,13"]
    run_cli(a, *argv)
    run_cli(b, *argv)
    assert strip_timings(a / "report.json") == strip_timings(b / "report.json")


def test_serial_and_parallel_rows_match(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    a.mkdir(), b.mkdir()
    argv = ["verify-traces", "--p", "7,13,19", "--lambda", "all"]
    _, ra = run_cli(a, *argv, "--jobs", "1")
    _, rb = run_cli(b, *argv, "--jobs", "2")
    assert ra["rows"] == rb["rows"]
    assert ra["config"] == rb["config"]


def test_version(capsys):
    with pytest.raises(SystemExit):
        cli.main(["--version"])
    assert capsys.readouterr().out.strip() == cli.__version__
