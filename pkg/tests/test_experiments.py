import json

import numpy as np
import pytest

from zonoenum import enumerate_bruteforce, validate_generators
from zonoenum.experiments import (
    ExperimentKind,
    ExperimentSpec,
    NoGroundTruthError,
    derive_seed,
    format_result,
    ground_truth,
    random_orthogonal_generator,
    run,
    run_error_trace,
    run_measure_map,
    run_stopping_histogram,
    run_timing,
)
from zonoenum.io import matrix_to_csv


@pytest.mark.parametrize("seed", range(5))
def test_random_orthogonal_rows(seed):
    A = random_orthogonal_generator(3, 10, seed)
    E = A.entries
    np.testing.assert_allclose(E @ E.T, np.eye(3), atol=1e-12)
    norms = np.linalg.norm(E, axis=0)
    assert np.all(norms <= 1 + 1e-12)
    assert np.sum(norms**2) == pytest.approx(3, abs=1e-12)
    assert A.general_position


def test_random_orthogonal_deterministic():
    a = random_orthogonal_generator(4, 9, 17).entries
    b = random_orthogonal_generator(4, 9, 17).entries
    assert a.tobytes() == b.tobytes()
    assert a.tobytes() != random_orthogonal_generator(4, 9, 18).entries.tobytes()


def test_random_orthogonal_rejects_wide():
    with pytest.raises(ValueError):
        random_orthogonal_generator(4, 3, 0)


def test_derive_seed_distinct():
    seeds = {derive_seed(0, 1, t) for t in range(100)}
    assert len(seeds) == 100
    assert derive_seed(5, 2) == derive_seed(5, 2)


def test_spec_validation():
    with pytest.raises(ValueError):
        ExperimentSpec("error_trace", m=5, n=2, trials=0)
    with pytest.raises(ValueError):
        ExperimentSpec("error_trace", m=5, n=2, sample_checkpoints=(10, 10))
    with pytest.raises(ValueError):
        ExperimentSpec("nonsense", m=5, n=2)


def test_spec_round_trip(tmp_path):
    spec = ExperimentSpec("measure_map", m=5, n=2, trials=3, seed=9, sample_checkpoints=(5, 50))
    path = tmp_path / "spec.json"
    path.write_text(json.dumps(spec.to_dict()))
    assert ExperimentSpec.from_json(path) == spec


def test_matrix_from_file(tmp_path):
    A = random_orthogonal_generator(2, 6, 3)
    path = tmp_path / "A.csv"
    path.write_text(matrix_to_csv(A))
    spec = ExperimentSpec("error_trace", m=6, n=2, trials=1, matrix_source=str(path),
                          sample_checkpoints=(10,))
    res = run(spec)
    assert res.num_vertices == 12
    with pytest.raises(ValueError):
        run(ExperimentSpec("error_trace", m=5, n=2, matrix_source=str(path)))


def test_ground_truth_reference_run_for_large_m():
    A = random_orthogonal_generator(2, 14, 0)
    spec = ExperimentSpec("error_trace", m=14, n=2, sample_checkpoints=(10, 100))
    truth, exact = ground_truth(A, spec)
    assert exact and len(truth) == 28
    with pytest.raises(NoGroundTruthError):
        ground_truth(A, ExperimentSpec("error_trace", m=14, n=2, sample_checkpoints=()))


def test_error_trace_planar():
    spec = ExperimentSpec("error_trace", m=10, n=2, trials=10, sample_checkpoints=(10, 100, 1000))
    res = run_error_trace(spec)
    assert res.truth_exact and res.num_vertices == 20
    finished = 0
    for rows in res.traces:
        errors = [r.error for r in rows]
        found = [r.vertices_found for r in rows]
        assert errors == sorted(errors, reverse=True)
        assert found == sorted(found)
        finished += rows[-1].exact_zero
    assert finished >= 9


def test_error_trace_zero_at_full_count():
    spec = ExperimentSpec("error_trace", m=5, n=2, trials=5, sample_checkpoints=(1, 2, 4, 8, 16, 32, 64))
    for rows in run_error_trace(spec).traces:
        for r in rows:
            assert (r.vertices_found == 10) == r.exact_zero
            assert (r.error == 0.0) == r.exact_zero


def test_stopping_histogram_square():
    A = validate_generators(np.eye(2))
    spec = ExperimentSpec("stopping_histogram", m=2, n=2, trials=2000, seed=1)
    res = run_stopping_histogram(spec, A)
    # first draw hits one pair, then a geometric wait with success 1/2
    se = np.std(res.samples) / np.sqrt(len(res.samples))
    assert abs(res.mean - 3.0) <= 3 * se
    assert res.censored == 0 and res.min >= 2


def test_stopping_histogram_planar_complete():
    spec = ExperimentSpec("stopping_histogram", m=10, n=2, trials=1000)
    res = run_stopping_histogram(spec)
    assert res.censored == 0 and res.max < 10**6
    assert len(res.samples) == 1000


def test_stopping_histogram_censoring():
    spec = ExperimentSpec("stopping_histogram", m=12, n=4, trials=3, max_samples=500)
    res = run_stopping_histogram(spec)
    assert res.censored == 3 and res.samples == [500] * 3


@pytest.mark.slow
def test_stopping_grows_with_m():
    # m=20 trials are capped; a censored mean is a lower bound on the true mean
    small = run_stopping_histogram(ExperimentSpec("stopping_histogram", m=10, n=3, trials=20,
                                                  max_samples=10**8))
    large = run_stopping_histogram(ExperimentSpec("stopping_histogram", m=20, n=3, trials=3,
                                                  max_samples=2 * 10**6))
    assert small.censored == 0
    assert large.mean > small.mean


def test_timing_row_contract():
    row = run_timing(ExperimentSpec("timing", m=5, n=2, trials=4))
    assert (row.n, row.m, row.trials, row.incomplete) == (2, 5, 4, 0)
    assert row.mean > 0 and row.std >= 0


@pytest.mark.slow
def test_timing_trends():
    def mean(n, m, trials, cap=10**8):
        return run_timing(ExperimentSpec("timing", m=m, n=n, trials=trials, max_samples=cap)).mean

    assert mean(2, 20, 20) > mean(2, 5, 20)
    assert mean(3, 20, 1, cap=2 * 10**6) > 10 * mean(2, 20, 20)


def test_measure_map_square():
    A = validate_generators(np.eye(2))
    spec = ExperimentSpec("measure_map", m=2, n=2, measure_samples=10**5, seed=2)
    res = run_measure_map(spec, A)
    assert len(res.rows) == 2
    for r in res.rows:
        assert abs(r.mass - 0.5) <= 3 * r.standard_error
        assert r.simplicial_constant == pytest.approx(np.sqrt(2), abs=1e-12)
    assert res.other == 0.0


def test_measure_map_planar():
    spec = ExperimentSpec("measure_map", m=5, n=2, measure_samples=10**5, seed=3)
    res = run_measure_map(spec)
    masses = np.array([r.mass for r in res.rows])
    se = np.sqrt(np.sum(np.array([r.standard_error for r in res.rows]) ** 2))
    assert abs(masses.sum() + res.other - 1) <= 3 * se + 1e-12
    assert res.spearman > 0


def test_csv_output_deterministic_with_provenance():
    spec = ExperimentSpec("error_trace", m=6, n=2, trials=3, sample_checkpoints=(10, 100))
    a = format_result(spec, run(spec))
    b = format_result(spec, run(spec))
    assert a == b
    first = a.splitlines()[0]
    assert first.startswith("# spec: ")
    assert json.loads(first[len("# spec: "):]) == spec.to_dict()


def test_json_output(tmp_path):
    spec = ExperimentSpec("stopping_histogram", m=5, n=2, trials=5)
    doc = json.loads(format_result(spec, run(spec), "json"))
    assert doc["spec"] == spec.to_dict()
    assert len(doc["result"]["samples"]) == 5
    assert set(doc["summary"]) == {"censored", "mean", "std", "min", "max"}


def test_measure_csv_columns():
    spec = ExperimentSpec("measure_map", m=4, n=2, measure_samples=10**4)
    lines = format_result(spec, run(spec)).splitlines()
    body = [l for l in lines if not l.startswith("#")]
    assert body[0] == "signs,coordinates,mass,standard_error,simplicial_constant"
    assert len(body) == 1 + 4
    assert all(row.split(",")[0][0] == "+" for row in body[1:])


def test_kinds_dispatch():
    assert {k.value for k in ExperimentKind} == {"error_trace", "stopping_histogram", "timing",
                                                 "measure_map"}
