import json
import subprocess
import sys

import numpy as np
import pytest

from zonoenum.cli import main
from zonoenum.experiments import random_orthogonal_generator
from zonoenum.io import matrix_to_csv, matrix_to_json, read_vertices_csv


def run_cli(*argv):
    return subprocess.run([sys.executable, "-m", "zonoenum", *argv], capture_output=True)


def test_enumerate_deterministic_bytes():
    a = run_cli("enumerate", "--n", "3", "--m", "8", "--seed", "42")
    b = run_cli("enumerate", "--n", "3", "--m", "8", "--seed", "42")
    assert a.returncode == b.returncode == 0
    assert a.stdout == b.stdout and len(a.stdout) > 0


def test_enumerate_csv_round_trip(tmp_path, capsys):
    out = tmp_path / "v.csv"
    assert main(["enumerate", "--n", "2", "--m", "5", "--out", str(out)]) == 0
    vs = read_vertices_csv(out, 5)
    assert len(vs) == 10
    rows = out.read_text().splitlines()
    assert len(rows) == 10 and len(rows[0].split(",")) == 5 + 2


def test_enumerate_json(capsys):
    assert main(["enumerate", "--n", "2", "--m", "4", "--format", "json", "--seed", "1"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["terminated_by"] == "full_enumeration"
    assert doc["policy"] == "full"
    assert doc["trace"][-1][1] == 8


def test_matrix_json_input(tmp_path, capsys):
    path = tmp_path / "A.json"
    path.write_text(json.dumps({"n": 2, "m": 3, "entries": [1, 0, 1, 0, 1, 1]}))
    assert main(["oracle", "--matrix", str(path)]) == 0
    pts = {tuple(map(float, r.split(",")[3:])) for r in capsys.readouterr().out.splitlines()}
    assert pts == {(2, 2), (-2, -2), (2, 0), (-2, 0), (0, 2), (0, -2)}


def test_matrix_csv_input(tmp_path, capsys):
    A = random_orthogonal_generator(2, 6, 4)
    path = tmp_path / "A.csv"
    path.write_text(matrix_to_csv(A))
    assert main(["oracle", "--matrix", str(path), "--method", "sweep"]) == 0
    assert len(capsys.readouterr().out.splitlines()) == 12


def test_matrix_json_round_trip(tmp_path):
    A = random_orthogonal_generator(3, 5, 4)
    path = tmp_path / "A.json"
    path.write_text(matrix_to_json(A))
    from zonoenum.io import read_matrix
    np.testing.assert_array_equal(read_matrix(path), A.entries)


def test_exit_validation(tmp_path, capsys):
    path = tmp_path / "bad.csv"
    path.write_text("1,0,2\n0,1,0\n")
    assert main(["enumerate", "--matrix", str(path)]) == 2
    assert "error" in capsys.readouterr().err


def test_exit_validation_bad_bound_input(capsys):
    assert main(["bound", "--epsilon", "-1", "--delta", "0.1", "--n", "2", "--num-vertices", "10",
                 "--m", "5"]) == 2


def test_exit_incomplete(capsys):
    code = main(["enumerate", "--n", "4", "--m", "12", "--max-samples", "50"])
    assert code == 3
    assert len(capsys.readouterr().out.splitlines()) > 0


def test_exit_io(tmp_path, capsys):
    assert main(["enumerate", "--matrix", str(tmp_path / "missing.csv")]) == 4
    garbled = tmp_path / "g.json"
    garbled.write_text("{not json")
    assert main(["enumerate", "--matrix", str(garbled)]) == 4
    ragged = tmp_path / "r.csv"
    ragged.write_text("1,0\n0\n")
    assert main(["enumerate", "--matrix", str(ragged)]) == 4


def test_policies(capsys):
    assert main(["enumerate", "--n", "3", "--m", "6", "--policy", "fixed:300", "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["samples_used"] == 300
    assert main(["enumerate", "--n", "3", "--m", "6", "--policy", "streak:50", "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["terminated_by"] == "no_new_vertex_streak"


def test_bound_both_variants(capsys):
    assert main(["bound", "--epsilon", "0.01", "--delta", "0.1", "--n", "2", "--num-vertices", "18",
                 "--m", "10"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["statement"]["p"] == 945 and doc["proof"]["p"] == 945
    assert doc["b"] == pytest.approx(2 * np.sqrt(10))
    assert doc["default_variant"] == "proof"


def test_bound_hausdorff(capsys):
    assert main(["bound", "--epsilon", "0.1", "--delta", "2", "--n", "2", "--num-vertices", "6",
                 "--b", "3", "--missed", "2", "--small-pairs", "4"]) == 0
    h = json.loads(capsys.readouterr().out)["hausdorff"]
    assert h["bound"] == 2.0 and h["vacuous"]


def test_approximate_error(capsys):
    assert main(["approximate", "--n", "2", "--m", "8", "--samples", "5", "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["samples_used"] == 5
    assert "error" not in doc
    assert main(["approximate", "--n", "2", "--m", "8", "--samples", "3", "--error",
                 "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["error"] > 0 and doc["true_vertices"] == 16


def test_measure(capsys):
    assert main(["measure", "--n", "2", "--m", "4", "--samples", "10000"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "# samples: 10000, other: 0"
    assert len(lines) == 1 + 4


def test_experiment_from_spec_file(tmp_path, capsys):
    spec = {"kind": "error_trace", "m": 6, "n": 2, "trials": 2, "sample_checkpoints": [10, 100]}
    path = tmp_path / "spec.json"
    path.write_text(json.dumps(spec))
    out = tmp_path / "trace.csv"
    assert main(["experiment", "--spec", str(path), "--out", str(out)]) == 0
    text = out.read_text()
    assert text.startswith("# spec: ")
    assert len([l for l in text.splitlines() if not l.startswith("#")]) == 1 + 2 * 2


def test_experiment_from_flags(capsys):
    assert main(["experiment", "--kind", "stopping_histogram", "--n", "2", "--m", "5",
                 "--trials", "4", "--format", "json"]) == 0
    assert len(json.loads(capsys.readouterr().out)["result"]["samples"]) == 4


def test_missing_matrix_arguments(capsys):
    assert main(["enumerate", "--n", "2"]) == 2
