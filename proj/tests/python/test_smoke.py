"""Smoke tests for the python bindings: generation, optimizer runs, the
replicated harness and the knee-point helper behave like the C++ core."""

import json
import math

import pytest

import micky


@pytest.fixture(scope="module")
def matrix():
    spec = micky.SynthSpec(n_workloads=20, n_configs=6, seed=7)
    m, exemplar = micky.gen_matrix(spec, objective="time")
    assert exemplar in [c.id for c in m.configs]
    return m


def test_matrix_shape_and_lookup(matrix):
    assert matrix.n_workloads == 20
    assert matrix.n_configs == 6
    w = matrix.workloads[0]
    best = matrix.best_config(w)
    assert matrix.normalized_performance(w, best) == 1.0
    for c in matrix.configs:
        np = matrix.normalized_performance(w, c.id)
        assert np >= 1.0
    with pytest.raises(micky.DataError):
        matrix.objective("nope", best)


def test_run_micky_budget_and_determinism(matrix):
    out = micky.run_micky(matrix, alpha=1, beta=0.5, seed=3)
    assert out.cost == 6 + 10  # alpha*|S| + ceil(beta*|W|)
    assert out.exemplar in [c.id for c in matrix.configs]
    assert len(out.pull_log) == out.cost
    again = micky.run_micky(matrix, alpha=1, beta=0.5, seed=3)
    assert out.to_json() == again.to_json()
    payload = json.loads(out.to_json())
    assert payload["exemplar"] == out.exemplar
    assert {"workload", "config", "value", "reward"} <= set(payload["pull_log"][0])


def test_per_workload_methods(matrix):
    w = matrix.workloads[1]
    brute = micky.run_brute(matrix, w)
    assert brute.cost == matrix.n_configs
    assert matrix.normalized_performance(w, brute.exemplar) == 1.0

    cherry = micky.run_cherrypick(matrix, w, seed=11)
    assert 3 <= cherry.cost <= matrix.n_configs

    rand = micky.run_random_k(matrix, w, k=4, seed=11)
    assert rand.cost == 4
    assert rand.workload == w


def test_replicate_brute_is_optimal(matrix):
    report = micky.replicate(matrix, "brute", n_reps=3, base_seed=1)
    assert report.replications == 3
    assert all(v == 1.0 for v in report.np_quantiles.values())
    assert report.cost_min == report.cost_max == matrix.n_workloads * matrix.n_configs
    parsed = json.loads(report.to_json())
    assert parsed["method"] == "brute"


def test_replicate_threads_do_not_change_output(matrix):
    a = micky.replicate(matrix, "micky", n_reps=6, base_seed=5, threads=1)
    b = micky.replicate(matrix, "micky", n_reps=6, base_seed=5, threads=4)
    assert a.to_json() == b.to_json()


def test_cost_curve(matrix):
    rows = micky.cost_curve(matrix, [10, 20], ["micky", "brute"], [1, 2, 3])
    by_key = {(r["n_workloads"], r["method"]): r["median_total_cost"] for r in rows}
    assert by_key[(10, "brute")] == 10 * matrix.n_configs
    assert by_key[(10, "micky")] == 6 + 5
    assert by_key[(20, "micky")] == 6 + 10


def test_knee_point():
    assert micky.knee_point(delta_p=0.05, savings=3.15, ratio=10.0) == 7
    assert micky.knee_point(delta_p=0.0, savings=3.0) is None  # never
    assert micky.knee_point(delta_p=0.05, savings=0.0) == 0
    with pytest.raises(ValueError):
        micky.knee_point(delta_p=-1.0, savings=1.0)


def test_dataset_round_trip(tmp_path):
    spec = micky.SynthSpec(n_workloads=8, n_configs=5, seed=9)
    exemplar = micky.write_dataset(spec, str(tmp_path))
    loaded = micky.load_matrix(
        str(tmp_path / "configs.csv"), str(tmp_path / "measurements.csv"), objective="time"
    )
    assert loaded.n_workloads == 8
    truth = json.loads((tmp_path / "truth.json").read_text())
    assert truth["planted_exemplar"] == exemplar
    frac = loaded.fraction_within(exemplar, 1.1)
    assert math.isclose(frac, 0.75, abs_tol=1.0 / 8 + 1e-9)
