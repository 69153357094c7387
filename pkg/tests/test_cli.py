import json
import subprocess
import sys

import pytest

from simplexdesign.cli import main
from simplexdesign.construct import six_point_design, cyclic_design
from simplexdesign.designfile import dumps, save_design


@pytest.fixture
def six_file(tmp_path):
    path = tmp_path / "six.json"
    save_design(six_point_design(), path)
    return str(path)


@pytest.fixture
def cyclic_file(tmp_path):
    path = tmp_path / "cyc.json"
    save_design(cyclic_design(), path)
    return str(path)


def test_verify_pass(six_file, capsys):
    assert main(["verify", "--design", six_file, "--t", "3"]) == 0
    body = json.loads(capsys.readouterr().out)
    assert body["is_design"] is True
    assert body["classification"] == "proper-design"


def test_verify_fail_exit_one(cyclic_file, capsys):
    assert main(["verify", "--design", cyclic_file, "--t", "3"]) == 1
    body = json.loads(capsys.readouterr().out)
    assert body["is_design"] is False


def test_verify_restricted_flips_verdict(cyclic_file):
    assert main(["verify", "--design", cyclic_file, "--t", "3",
                 "--restricted", "cyc"]) == 0


def test_verify_text_format(six_file, capsys):
    assert main(["verify", "--design", six_file, "--t", "3",
                 "--format", "text"]) == 0
    out = capsys.readouterr().out
    assert "PASS" in out
    assert "brute-force" in out


def test_verify_csv_format(cyclic_file, capsys):
    main(["verify", "--design", cyclic_file, "--t", "3", "--format", "csv"])
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "index,target,observed,residual,symmetrization"
    assert len(lines) > 1


def test_verify_missing_file(tmp_path, capsys):
    assert main(["verify", "--design", str(tmp_path / "no.json"),
                 "--t", "3"]) == 2
    assert "error" in capsys.readouterr().err


def test_verify_malformed_design(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"d": 3, "mode": "explicit", "points": [[1, 1, 1]]}')
    assert main(["verify", "--design", str(bad), "--t", "3"]) == 2


def test_bad_tolerance_is_usage_error(six_file):
    assert main(["verify", "--design", six_file, "--t", "3",
                 "--tolerance", "-1"]) == 2


def test_construct_writes_files(tmp_path, capsys):
    code = main(["construct", "--d", "6", "--family", "three-value",
                 "--include-pseudo", "--out", str(tmp_path)])
    assert code == 0
    report = json.loads(capsys.readouterr().out)
    files = report["files"]
    assert len(files) == 2
    assert sum(f.endswith("_pseudo.json") for f in files) == 1
    # the written designs verify back through the same CLI
    for path, expect in zip(files, [0, 0]):
        assert main(["verify", "--design", path, "--t", "3"]) == expect


def test_construct_infeasible(capsys):
    assert main(["construct", "--d", "10", "--family", "three-value"]) == 1
    assert "failed" in capsys.readouterr().err


def test_construct_uniform_excess(tmp_path, capsys):
    code = main(["construct", "--d", "4", "--family", "uniform-excess",
                 "--out", str(tmp_path)])
    assert code == 0
    report = json.loads(capsys.readouterr().out)
    assert len(report["files"]) == 1
    assert main(["verify", "--design", report["files"][0], "--t", "2"]) == 0


def test_tables_csv(capsys):
    assert main(["tables"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "table,d,a,b,1-a-b,proper"
    assert len(lines) == 17
    assert sum(line.startswith("improper,") for line in lines) == 7


def test_tables_to_file(tmp_path):
    out = tmp_path / "tables.csv"
    assert main(["tables", "--out", str(out)]) == 0
    assert out.read_text().startswith("table,d,a,b,1-a-b,proper")


def test_tables_json(capsys):
    assert main(["tables", "--format", "json"]) == 0
    body = json.loads(capsys.readouterr().out)
    assert len(body["rows"]) == 16


def test_counterexample_text(capsys):
    assert main(["counterexample"]) == 0
    out = capsys.readouterr().out
    assert "NOT IN SPAN" in out
    assert "0.00481" in out


def test_counterexample_json(capsys):
    assert main(["counterexample", "--format", "json"]) == 0
    body = json.loads(capsys.readouterr().out)
    assert body["repair_passes"] is True


def test_span_text(capsys):
    code = main(["span", "--d", "3", "--group", "cyc", "--k", "2,1,0",
                 "--basis", "1,0,0;2,0,0;3,0,0", "--adjoin-constant",
                 "--format", "text"])
    assert code == 0
    assert "NOT IN SPAN" in capsys.readouterr().out


def test_span_json(capsys):
    code = main(["span", "--d", "3", "--group", "sym", "--k", "2,1,0",
                 "--basis", "1,0,0;2,0,0;3,0,0", "--adjoin-constant"])
    assert code == 0
    body = json.loads(capsys.readouterr().out)
    assert body["in_span"] is True
    assert body["coefficients"] is not None


def test_span_bad_group():
    # argparse exits directly on a bad typed flag; code must still be 2
    with pytest.raises(SystemExit) as err:
        main(["span", "--d", "3", "--group", "nope", "--k", "2,1,0",
              "--basis", "1,0,0"])
    assert err.value.code == 2


def test_plot_writes_svg(tmp_path, cyclic_file, capsys):
    out = tmp_path / "fig.svg"
    code = main(["plot", "--design", cyclic_file, "--k", "2,1,0",
                 "--grid", "40", "--out", str(out)])
    assert code == 0
    assert out.read_text().startswith("<svg")


def test_plot_rejects_wrong_dimension(tmp_path):
    doc = {"d": 4, "mode": "explicit",
           "points": [["1/4", "1/4", "1/4", "1/4"]]}
    path = tmp_path / "d4.json"
    path.write_text(dumps(doc) + "\n")
    assert main(["plot", "--design", str(path), "--out",
                 str(tmp_path / "fig.svg")]) == 2


def test_plot_requires_something(tmp_path):
    assert main(["plot", "--out", str(tmp_path / "fig.svg")]) == 2


def test_deterministic_output(six_file, capsys):
    main(["verify", "--design", six_file, "--t", "3"])
    one = capsys.readouterr().out
    main(["verify", "--design", six_file, "--t", "3"])
    two = capsys.readouterr().out
    assert one == two


def test_module_entry_point(six_file):
    proc = subprocess.run(
        [sys.executable, "-m", "simplexdesign.cli",
         "verify", "--design", six_file, "--t", "3"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["is_design"] is True
