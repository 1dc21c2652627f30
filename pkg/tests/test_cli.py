import csv
import json

import pytest

from orlicztf import cli


def run(capsys, argv):
    code = cli.main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_report_schema_and_config_echo(capsys):
    code, rep = run(capsys, ["young", "evaluate", "--kind", "power:2",
                             "--at", "3"])
    assert code == 0
    assert rep["schema"] == 1
    assert rep["command"] == "young evaluate"
    cfg = rep["config"]
    assert cfg["N"] == 256 and cfg["L"] == 12.0 and cfg["seed"] == 42
    assert rep["results"][0]["value"] == 9.0
    assert isinstance(rep["timing_ms"], float)


def test_young_conjugate_closed_form_row(capsys):
    code, rep = run(capsys, ["young", "conjugate", "--kind", "log_example",
                             "--at", "0.01"])
    assert code == 0
    rows = {r["name"]: r for r in rep["results"]}
    row = rows["closed_form_rel_error"]
    assert row["pass"] and row["value"] < 1e-6 and row["tolerance"] == 1e-6


def test_reports_deterministic_modulo_timing(capsys):
    argv = ["norm", "luxemburg", "--input", "mix:3", "--young", "power:2",
            "--N", "64", "--L", "8"]
    _, rep1 = run(capsys, argv)
    _, rep2 = run(capsys, argv)
    rep1.pop("timing_ms")
    rep2.pop("timing_ms")
    assert rep1 == rep2


def test_usage_errors_exit_two(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["young", "evaluate", "--kind", "nosuch", "--at", "1"])
    assert exc.value.code == 2
    capsys.readouterr()
    with pytest.raises(SystemExit) as exc:
        cli.main(["bogus"])
    assert exc.value.code == 2
    capsys.readouterr()
    with pytest.raises(SystemExit) as exc:
        cli.main(["norm", "luxemburg", "--input", "/nonexistent/f.csv",
                  "--N", "64", "--L", "8"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_numerical_failure_exits_one(capsys):
    code, rep = run(capsys, ["psido", "calculi", "--symbol", "mix:5",
                             "--input", "mix:9", "--A1", "0", "--A2", "0.5",
                             "--N", "64", "--L", "8", "--tol", "1e-20"])
    assert code == 1
    assert not rep["results"][0]["pass"]


def test_entropy_scan_csv(tmp_path, capsys):
    out = tmp_path / "scan.csv"
    code, rep = run(capsys, ["entropy", "scan", "--lambdas", "0.25,1,4",
                             "--out", str(out)])
    assert code == 0
    with open(out, newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["lambda", "entropy", "M2_norm", "MPhi_norm"]
    assert len(rows) == 4
    lams = [float(r[0]) for r in rows[1:]]
    assert lams == [0.25, 1.0, 4.0]
    es = [float(r[1]) for r in rows[1:]]
    assert abs(es[0] - es[2]) < 1e-6  # dilation symmetry
    assert abs((es[2] - es[1]) - 0.22314355) < 1e-4  # log(5/4)


def test_transform_stft_writes_field(tmp_path, capsys):
    out = tmp_path / "V.json"
    code, rep = run(capsys, ["transform", "stft", "--input", "mix:7",
                             "--N", "64", "--L", "8", "--out", str(out)])
    assert code == 0
    import orlicztf as o
    V = o.load_json(str(out))
    assert V.grid.shape == (64, 64)
    moyal = [r for r in rep["results"] if r["name"] == "moyal_rel_error"][0]
    assert moyal["value"] < 1e-8


def test_psido_opnorm_report(capsys):
    code, rep = run(capsys, ["psido", "opnorm", "--symbol", "mix:5",
                             "--N", "64", "--L", "8", "--trials", "3",
                             "--domain", "M2", "--codomain", "M2",
                             "--symbol-space", "m:power:2:power:2"])
    assert code == 0
    rows = {r["name"]: r["value"] for r in rep["results"]}
    assert rows["method"] == "singular_value"
    assert rows["operator_norm_lower_bound"] > 0
    assert rows["ratio_to_symbol_norm"] > 0


def test_verify_subcommand_single(capsys):
    code, rep = run(capsys, ["verify", "moyal", "--trials", "5"])
    assert code == 0
    assert rep["results"][0]["name"] == "moyal_isometry"
    assert rep["results"][0]["pass"]


def test_verify_projection_and_rank_one(capsys):
    code, rep = run(capsys, ["verify", "projection"])
    assert code == 0
    code, rep = run(capsys, ["verify", "rank-one"])
    assert code == 0


def test_report_written_to_file(tmp_path, capsys):
    out = tmp_path / "report.json"
    code, rep = run(capsys, ["young", "evaluate", "--kind", "entropy",
                             "--at", "1", "--out", str(out)])
    assert code == 0
    with open(out) as fh:
        saved = json.load(fh)
    assert saved["results"] == rep["results"]


def test_report_csv_format(tmp_path, capsys):
    out = tmp_path / "report.csv"
    code, _ = run(capsys, ["young", "classify", "--kind", "power:2",
                           "--format", "csv", "--out", str(out)])
    assert code == 0
    with open(out, newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["name", "value", "tolerance", "pass"]
    assert len(rows) > 3
