import csv
import io
import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from sunrise.cli import main

GOLDEN = Path(__file__).parent / "golden"


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def assert_same_record(got, want):
    assert list(got) == list(want)  # field names and order are part of the contract
    for key, value in want.items():
        if isinstance(value, float):
            assert got[key] == pytest.approx(value, abs=1e-12), key
        elif isinstance(value, list):
            assert len(got[key]) == len(value)
            for g, w in zip(got[key], value):
                assert_same_record(g, w)
        else:
            assert got[key] == value, key


def assert_same_csv(got_text, want_text):
    got = list(csv.reader(io.StringIO(got_text)))
    want = list(csv.reader(io.StringIO(want_text)))
    assert got[0] == want[0]
    assert len(got) == len(want)
    for g_row, w_row in zip(got[1:], want[1:]):
        for g, w in zip(g_row, w_row):
            try:
                assert float(g) == pytest.approx(float(w), abs=1e-12)
            except ValueError:
                assert g == w


@pytest.mark.parametrize("argv, golden", [
    (["predict", "--prior", "jeffreys-mixture", "--n", "1", "--t", "1", "--m", "3"], "predict_jeffreys_n1.json"),
    (["confidence", "--pvalue", "left", "--n", "5", "--t", "5", "--level", "1.0"], "confidence_left_n5_t5.json"),
    (["posterior", "--prior", "laplace", "--n", "1", "--t", "1", "--grid", "3"], "posterior_laplace_grid.json"),
])
def test_golden_json(argv, golden):
    code, out = run(*argv)
    assert code == 0 and out.endswith("\n")
    assert_same_record(json.loads(out), json.loads((GOLDEN / golden).read_text()))


@pytest.mark.parametrize("argv, golden", [
    (["predict", "--prior", "induced-left", "--n", "4", "--t", "4", "--format", "csv"], "predict_induced_left.csv"),
    (["coverage", "--proc", "two_way", "--theta", "0.9,1.0", "--n", "10,20", "--format", "csv"],
     "coverage_two_way.csv"),
])
def test_golden_csv(argv, golden):
    code, out = run(*argv)
    assert code == 0
    assert_same_csv(out, (GOLDEN / golden).read_text())


def test_predict_headline():
    code, out = run("predict", "--prior", "laplace", "--n", "2190000", "--t", "2190000")
    rec = json.loads(out)
    assert code == 0
    assert rec["predict_next"] == pytest.approx(2190001 / 2190002, abs=1e-14)
    assert str(rec["predict_next"]).startswith("0.9999995")
    assert rec["prob_general"] == 0.0


def test_predict_examples():
    rec = json.loads(run("predict", "--prior", "jeffreys-mixture", "--n", "1", "--t", "1")[1])
    assert rec["prob_general"] == pytest.approx(0.666667, abs=1e-6)
    rec = json.loads(run("predict", "--prior", "beta:2,3", "--n", "0", "--t", "0")[1])
    assert rec["predict_next"] == 0.4
    rec = json.loads(run("predict", "--prior", "induced-left", "--n", "3", "--t", "3", "--m", "inf")[1])
    assert rec["m"] == "inf" and rec["predict_run"] == 1.0
    assert rec["confirmation"] is None and "undefined" in rec["note"]


def test_confidence_examples():
    rec = json.loads(run("confidence", "--pvalue", "right", "--n", "5", "--t", "0")[1])
    assert (rec["p0"], rec["w"], rec["degenerate_point"]) == (1.0, 0.0, 0.0)
    rec = json.loads(run("confidence", "--pvalue", "mid", "--n", "4", "--t", "2")[1])
    assert (rec["a"], rec["b"], rec["induced_prior"]) == (2.5, 2.5, "beta:0.5,0.5")
    code, out = run("confidence", "--pvalue", "right", "--n", "6", "--t", "2", "--grid", "4", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 4 and rows[0]["kind"] == "density"


def test_coverage_examples():
    rec = json.loads(run("coverage", "--proc", "two_way", "--theta", "1.0", "--n", "10")[1])
    assert rec["coverage"] == 1.0
    rec = json.loads(run("coverage", "--proc", "two_way", "--theta", "0.9", "--n", "10")[1])
    assert rec["accept_h1_rate"] == pytest.approx(0.9**10, abs=1e-14)
    code, out = run("coverage", "--proc", "two_way", "--theta", "0.5", "--n", "20",
                    "--reps", "100000", "--seed", "7")
    mc = json.loads(out)
    exact = json.loads(run("coverage", "--proc", "two_way", "--theta", "0.5", "--n", "20")[1])
    c = exact["coverage"]
    assert mc["method"] == "monte_carlo" and mc["seed"] == 7
    assert abs(mc["coverage"] - c) <= 4 * (c * (1 - c) / 1e5) ** 0.5


@pytest.mark.parametrize("argv", [
    ["predict", "--n", "3", "--t", "5"],
    ["predict", "--prior", "uniform", "--n", "3", "--t", "1"],
    ["predict", "--n", "3"],
    ["predict", "--n", "-3", "--t", "1"],
    ["confidence", "--pvalue", "right", "--n", "0", "--t", "0"],
    ["confidence", "--pvalue", "sideways", "--n", "3", "--t", "1"],
    ["coverage", "--proc", "two_way", "--theta", "0.5"],
    ["coverage", "--proc", "two_way", "--theta", "1.5", "--n", "4"],
    ["posterior", "--prior", "haldane", "--n", "0", "--t", "0"],
    ["posterior", "--n", "3", "--t", "1", "--grid", "1"],
    ["frobnicate"],
    [],
])
def test_usage_errors_exit_2(argv, capsys):
    code, out = run(*argv)
    assert code == 2 and out == ""


def test_reproduce_passes():
    code, out = run("reproduce")
    assert code == 0
    assert out.rstrip().splitlines()[-1].startswith("42/42 claims reproduced")
    code, out = run("reproduce", "--format", "json")
    rows = json.loads(out)
    assert list(rows[0]) == ["claim_id", "paper_location", "expected", "computed", "abs_diff", "threshold", "passed"]
    ids = {r["claim_id"] for r in rows}
    assert {"laplace_predictive_2190000", "jeffreys_chain_k1", "jeffreys_chain_k2", "jeffreys_chain_k3"} <= ids
    row = next(r for r in rows if r["claim_id"] == "laplace_predictive_2190000")
    assert row["expected"] == "2190001/2190002"


def test_reproduce_exit_code_on_failure(monkeypatch):
    from sunrise import reproduce

    def broken():
        yield reproduce._row("broken", "nowhere", 1.0, 0.0, 1e-9)

    monkeypatch.setattr(reproduce, "CLAIM_GROUPS", (broken,))
    code, out = run("reproduce")
    assert code == 1 and "FAIL" in out


def test_module_entry_point_and_fallback_backend():
    env = dict(os.environ, SUNRISE_PURE_PYTHON="1")
    proc = subprocess.run([sys.executable, "-m", "sunrise", "predict", "--prior", "haldane", "--n", "3", "--t", "3"],
                          capture_output=True, text=True, env=env, check=True)
    assert json.loads(proc.stdout)["predict_next"] == 1.0
    proc = subprocess.run([sys.executable, "-c", "import sunrise; print(sunrise.BACKEND)"],
                          capture_output=True, text=True, env=env, check=True)
    assert proc.stdout.strip() == "python"
