"""CLI contract tests: exit codes, machine-readable stdout, reproducible
outputs. Skipped unless MICKY_CLI points at the built binary."""

import json
import os
import subprocess

import pytest

CLI = os.environ.get("MICKY_CLI")

pytestmark = pytest.mark.skipif(not CLI, reason="MICKY_CLI not set")


def run(*args, cwd=None):
    return subprocess.run([CLI, *args], capture_output=True, text=True, cwd=cwd)


def test_gen_prints_the_exemplar_and_is_reproducible(tmp_path):
    a = run("gen", "--out", str(tmp_path / "a"), "--workloads", "10", "--configs", "5",
            "--seed", "4")
    b = run("gen", "--out", str(tmp_path / "b"), "--workloads", "10", "--configs", "5",
            "--seed", "4")
    assert a.returncode == 0
    assert a.stdout == b.stdout
    exemplar = a.stdout.strip()
    assert exemplar  # the planted config id
    for name in ("configs.csv", "measurements.csv", "truth.json"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()
    truth = json.loads((tmp_path / "a" / "truth.json").read_text())
    assert truth["planted_exemplar"] == exemplar


def test_run_emits_outcome_json(tmp_path):
    run("gen", "--out", str(tmp_path / "data"), "--workloads", "10", "--configs", "5")
    r = run("run", "--method", "brute", "--data", str(tmp_path / "data"))
    assert r.returncode == 0
    payload = json.loads(r.stdout)  # stdout is the result, nothing else
    assert payload["method"] == "brute"
    assert payload["cost"] == 50
    assert len(payload["runs"]) == 10

    m = run("run", "--method", "micky", "--data", str(tmp_path / "data"), "--seed", "9")
    m2 = run("run", "--method", "micky", "--data", str(tmp_path / "data"), "--seed", "9")
    assert m.stdout == m2.stdout
    micky_payload = json.loads(m.stdout)
    assert micky_payload["cost"] == 5 + 5  # alpha|S| + ceil(beta|W|)
    assert {"exemplar", "cost", "pull_log", "arm_stats"} <= set(micky_payload)

    c = run("run", "--method", "cherrypick", "--data", str(tmp_path / "data"))
    costs = [r["cost"] for r in json.loads(c.stdout)["runs"]]
    assert all(3 <= cost <= 5 for cost in costs)


def test_exit_codes(tmp_path):
    usage = run("run", "--method", "annealing", "--data", str(tmp_path))
    assert usage.returncode == 2  # unknown method is a usage error

    missing = run("run", "--method", "brute", "--data", str(tmp_path / "nope"))
    assert missing.returncode == 1  # bad data
    assert missing.stdout == ""
    assert "error" in missing.stderr

    bad_flag = run("knee", "--delta-p", "-0.5", "--savings", "1")
    assert bad_flag.returncode == 2

    help_out = run("--help")
    assert help_out.returncode == 0


def test_knee_output():
    assert run("knee", "--delta-p", "0.05", "--savings", "3.15").stdout.strip() == "7"
    assert run("knee", "--delta-p", "0", "--savings", "3").stdout.strip() == "never"
    assert run("knee", "--delta-p", "0.05", "--savings", "0").stdout.strip() == "0"


def test_gen_spec_file(tmp_path):
    spec = {"n_workloads": 6, "n_configs": 4, "exemplar_fraction": 1.0, "near_band": 0.0,
            "seed": 12}
    (tmp_path / "spec.json").write_text(json.dumps(spec))
    r = run("gen", "--spec", str(tmp_path / "spec.json"), "--out", str(tmp_path / "d"))
    assert r.returncode == 0
    exemplar = r.stdout.strip()
    # p=1, delta=0: the planted config is optimal for every workload
    ev = run("run", "--method", "brute", "--data", str(tmp_path / "d"), "--objective", "time")
    for sub in json.loads(ev.stdout)["runs"]:
        np = [e for e in sub["pull_log"] if e["config"] == exemplar]
        best = min(e["value"] for e in sub["pull_log"])
        assert np[0]["value"] == best

    mixing = run("gen", "--spec", str(tmp_path / "spec.json"), "--workloads", "9",
                 "--out", str(tmp_path / "e"))
    assert mixing.returncode == 2  # --spec excludes the inline flags


def test_eval_writes_reports(tmp_path):
    run("gen", "--out", str(tmp_path / "data"), "--workloads", "8", "--configs", "4")
    r = run("eval", "--data", str(tmp_path / "data"), "--out", str(tmp_path / "rep"),
            "--methods", "brute,random4", "--reps", "3")
    assert r.returncode == 0
    comparison = json.loads(r.stdout)
    assert set(comparison["methods"]) == {"brute", "random4"}
    brute_report = json.loads((tmp_path / "rep" / "report_brute.json").read_text())
    assert all(v == 1.0 for v in brute_report["np_quantiles"].values())
    csv_lines = (tmp_path / "rep" / "samples.csv").read_text().splitlines()
    assert csv_lines[0] == "method,replication,workload,np,cost"
    assert len(csv_lines) == 1 + 2 * 3 * 8  # two methods, three reps, eight workloads
