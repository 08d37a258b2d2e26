import csv
import json
import math

import pytest

from mzl.cli import PLOT_COLUMNS, main, parse_range, UsageError
from mzl.zeros import isolate_zeros
from mzl.basis import gap_function


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out), err


def strip_time(doc):
    doc = json.loads(json.dumps(doc))
    doc["metadata"].pop("wall_time_s")
    return doc


def test_parse_range():
    assert parse_range("4..10", even=True) == [4, 6, 8, 10]
    assert parse_range("3", even=False) == [3]
    with pytest.raises(UsageError):
        parse_range("5..9", even=True)
    with pytest.raises(UsageError):
        parse_range("10..4", even=False)


def test_basis_e4(capsys):
    code, doc, _ = run_json(capsys, "basis", "-k", "4", "-m", "0", "--terms", "2", "--format", "json")
    assert code == 0 and doc["schema"] == 1
    assert [c["c"] for c in doc["coefficients"]] == ["1", "240", "2160"]
    assert doc["F"] == ["1"]


def test_basis_g12_text(capsys):
    code, out, _ = run(capsys, "basis", "-k", "12", "-m", "0", "--terms", "3")
    assert code == 0
    assert "q^2: 196560" in out


def test_basis_csv(capsys):
    code, out, _ = run(capsys, "basis", "-k", "0", "-m", "1", "--terms", "1", "--format", "csv")
    rows = list(csv.reader(out.splitlines()))
    assert rows == [["n", "coefficient"], ["-1", "1"], ["0", "0"], ["1", "196884"]]


def test_basis_missing_element_is_usage_error(capsys):
    code, _, err = run(capsys, "basis", "-k", "12", "-m", "-2")
    assert code == 2 and "m >= -l" in err


def test_argparse_errors_exit_2(capsys):
    assert run(capsys)[0] == 2
    assert run(capsys, "zeros", "-k", "x", "-m", "0")[0] == 2


def test_zeros_weight_four(capsys):
    code, doc, _ = run_json(capsys, "zeros", "-k", "4", "-m", "0")
    assert code == 0
    assert doc["zeros_theta"] == [] and doc["endpoint_rho"] == "1/3"
    assert doc["cross_check"]["agree"]


def test_zeros_g12(capsys):
    code, doc, _ = run_json(capsys, "zeros", "-k", "12", "-m", "0")
    assert code == 0 and len(doc["zeros_theta"]) == 1
    for key in ("k", "m", "ell", "kprime", "radii", "endpoint_i", "method", "metadata"):
        assert key in doc


def test_zeros_counterexample_warns(capsys):
    code, doc, err = run_json(capsys, "zeros", "-k", "132", "-m", "-9")
    assert code == 0
    assert len(doc["zeros_theta"]) < 2
    assert "warning" in doc and "warning" in err


def test_zeros_csv(capsys):
    code, out, _ = run(capsys, "zeros", "-k", "24", "-m", "0", "--format", "csv", "--no-cross-check")
    rows = list(csv.reader(out.splitlines()))
    assert rows[0] == ["theta", "radius"] and len(rows) == 3


def test_json_round_trip_and_metadata(capsys, monkeypatch):
    monkeypatch.setenv("MZL_PREC_BITS", "320")
    _, out, _ = run(capsys, "zeros", "-k", "16", "-m", "0")
    doc = json.loads(out)
    again = json.dumps(doc, indent=2, sort_keys=True)
    assert json.loads(again) == doc and again == out.rstrip("\n")
    meta = doc["metadata"]
    assert meta["config"]["prec_bits"] == 320
    assert meta["command"][:2] == ["mzl", "zeros"] and "version" in meta and "wall_time_s" in meta


def test_output_is_deterministic(capsys):
    _, a, _ = run_json(capsys, "zeros", "-k", "40", "-m", "1")
    _, b, _ = run_json(capsys, "zeros", "-k", "40", "-m", "1")
    assert strip_time(a) == strip_time(b)


def test_interlace_trivial_pair(capsys):
    code, doc, _ = run_json(capsys, "interlace", "--mode", "weight", "-m", "0", "-k", "4..4")
    assert code == 0
    assert doc["pairs"][0]["counts"] == [0, 1]


def test_interlace_weight_range(capsys):
    code, doc, _ = run_json(capsys, "interlace", "--mode", "weight", "-m", "0", "-k", "4..40")
    assert code == 0 and all(p["ok"] for p in doc["pairs"])
    assert [p["first"][0] for p in doc["pairs"]] == list(range(4, 41, 2))


def test_interlace_index_with_epsilon(capsys):
    code, doc, _ = run_json(capsys, "interlace", "--mode", "index", "-k", "0", "-m", "1..6", "--epsilon", "0.1")
    assert code == 0 and doc["summary"] == "6/6 pairs interlace"


def test_interlace_parallel_matches_serial(capsys):
    _, a, _ = run_json(capsys, "interlace", "--mode", "weight", "-m", "1", "-k", "10..20")
    _, b, _ = run_json(capsys, "interlace", "--mode", "weight", "-m", "1", "-k", "10..20", "--jobs", "2")
    assert a["pairs"] == b["pairs"]


def test_interlace_odd_endpoint_is_usage_error(capsys):
    assert run(capsys, "interlace", "--mode", "weight", "-m", "0", "-k", "4..9")[0] == 2


def test_verify_thresholds(capsys):
    code, doc, _ = run_json(capsys, "verify", "--suite", "thresholds")
    assert code == 0 and doc["ok"]
    names = {r["name"]: r for r in doc["suites"]["thresholds"]["reports"]}
    assert names["epsilon"]["threshold"] == 118


def test_verify_models(capsys):
    code, doc, _ = run_json(capsys, "verify", "--suite", "models", "--draws", "5")
    assert code == 0 and doc["suites"]["models"]["ok"]


def test_verify_constants_claims(capsys):
    code, doc, _ = run_json(capsys, "verify", "--suite", "constants", "--grid", "1000")
    assert code == 0
    reps = {r["name"] + str(r["params"].get("height", "")): r for r in doc["suites"]["constants"]["reports"]}
    assert reps["arc_delta_max"]["holds"]


def test_plot_csv(tmp_path, capsys):
    out = tmp_path / "g24.csv"
    code, _, _ = run(capsys, "plot", "-k", "24", "-m", "0", "--samples", "60", "--out", str(out))
    assert code == 0
    with open(out) as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == PLOT_COLUMNS
    data = [[float(v) if v else None for v in r] for r in rows[1:]]
    assert len(data) == 60
    zs = isolate_zeros(gap_function(24)).zeros_theta
    for z in zs:
        before = [r for r in data if r[0] < z][-1]
        after = [r for r in data if r[0] > z][0]
        assert before[1] * after[1] < 0
    for theta, g, cos_model, _, rhs1, _ in data:
        if theta <= 1.9:
            assert abs(g - cos_model) <= rhs1
    assert all((r[3] is None) == (r[0] < 7 * math.pi / 12) for r in data)


def test_plot_rejects_bad_input(tmp_path, capsys):
    assert run(capsys, "plot", "-k", "24", "-m", "0", "--samples", "1", "--out", str(tmp_path / "a.csv"))[0] == 2
    assert run(capsys, "plot", "-k", "24", "-m", "0", "--samples", "3", "--out", "/nonexistent/dir/a.csv")[0] != 0
