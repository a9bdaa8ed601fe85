from __future__ import annotations

import csv
import io
import json

import pytest

from signedcover.batch import COLUMNS, BatchReport, run_batch
from signedcover.cli import main
from signedcover.generators import InstanceSpec, petersen
from signedcover.graph import SignedGraph, write_sg


@pytest.fixture
def petersen_file(tmp_path):
    path = tmp_path / "p.sg"
    write_sg(petersen(), path)
    return str(path)


def _run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_gen_writes_sg(capsys, tmp_path):
    out = tmp_path / "g.sg"
    code, _ = _run(capsys, "gen", "--generator", "petersen-neg-c5", "-o", str(out))
    assert code == 0 and out.read_text().startswith("sg 10 15\n")


def test_analyze_json(capsys, petersen_file):
    code, out = _run(capsys, "analyze", "--input", petersen_file, "--json")
    data = json.loads(out)
    assert code == 0 and data["epsilon"] == 3 and data["tau"] == 15 and data["flow_admissible"]


def test_tjoin_json(capsys, tmp_path):
    path = tmp_path / "c4.sg"
    path.write_text("sg 4 4\n0 1 +\n1 2 +\n2 3 +\n3 0 +\n")
    code, out = _run(capsys, "tjoin", "--input", str(path), "--terminals", "0,2", "--json")
    data = json.loads(out)
    assert data == {"size": 2, "edges": data["edges"], "bound": "2", "tight": True}


def test_cover_and_verify(capsys, petersen_file, tmp_path):
    cert_path = tmp_path / "c.json"
    code, out = _run(capsys, "cover", "--input", petersen_file, "--bound", "19/6", "-o", str(cert_path))
    assert code == 0 and "25 < 95/2" in out
    code, out = _run(capsys, "verify", "--input", petersen_file, "--certificate", str(cert_path))
    assert code == 0 and "pass" in out


def test_verify_catches_tampering(capsys, petersen_file, tmp_path):
    cert_path = tmp_path / "c.json"
    _run(capsys, "cover", "--input", petersen_file, "-o", str(cert_path))
    data = json.loads(cert_path.read_text())
    data["circuits"].pop()
    cert_path.write_text(json.dumps(data))
    code, out = _run(capsys, "verify", "--input", petersen_file, "--certificate", str(cert_path))
    assert code == 1 and "uncovered" in out


def test_cover_8_3_rejects_odd(capsys, petersen_file):
    code = main(["cover", "--input", petersen_file, "--bound", "8/3"])
    assert code == 2
    assert "odd" in capsys.readouterr().err


def test_not_admissible_exit(capsys, tmp_path):
    path = tmp_path / "loop.sg"
    path.write_text("sg 1 1\n0 0 -\n")
    assert main(["cover", "--input", str(path)]) == 2


def test_oracle(capsys, petersen_file):
    code, out = _run(capsys, "oracle", "scc", "--input", petersen_file, "--json")
    assert json.loads(out)["scc"] == 25
    code, out = _run(capsys, "oracle", "frustration", "--input", petersen_file, "--json")
    assert json.loads(out)["epsilon"] == 3


def test_oracle_budget_flag(capsys, petersen_file):
    assert main(["oracle", "enumerate", "--input", petersen_file, "--max-vertices", "5"]) == 2


def test_bench_csv(capsys, tmp_path):
    csv_path = tmp_path / "b.csv"
    json_path = tmp_path / "b.json"
    code, out = _run(capsys, "bench", "--count", "6", "--suite", "tjoin", "--n", "6", "--m", "9",
                     "--csv", str(csv_path), "--json-out", str(json_path))
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(csv_path.read_text())))
    assert len(rows) == 6 and tuple(rows[0]) == COLUMNS
    assert json.loads(json_path.read_text())["counts"]["pass"] == 6


def test_batch_empty():
    report = run_batch([], None, "scc-19/6")
    assert report.rows == [] and report.exit_code == 0


def test_batch_reproducible():
    spec = InstanceSpec("random-multigraph", 7, 11, 0.4)
    a = run_batch([spec], range(5), "scc-19/6").to_csv()
    b = run_batch([spec], range(5), "scc-19/6", workers=2).to_csv()
    assert a == b


def test_batch_oracle_compare():
    spec = InstanceSpec("random-multigraph", 6, 9, 0.5, params={"bridgeless": True})
    report = run_batch([spec], range(8), "oracle-compare")
    checked = [r for r in report.rows if r["oracle"] is not None]
    assert checked and all(r["oracle"] <= r["length"] for r in checked)
    assert report.exit_code == 0


def test_batch_failure_sets_exit_code():
    report = BatchReport("scc-19/6", [{k: None for k in COLUMNS} | {"pass": False}])
    assert report.exit_code == 1


def test_batch_bad_suite():
    with pytest.raises(ValueError):
        run_batch([], None, "nope")
