import json
import subprocess
import sys
from pathlib import Path

import pytest

from markovchaos import ConfigParseError, ValidationError
from markovchaos.cli import run_command
from markovchaos.io import load_chain_spec, path_to_csv, read_path_csv

ROOT = Path(__file__).resolve().parent.parent
SPECS = ROOT / "specs"
EVENTS = str(SPECS / "walk_events.json")
RAW = str(SPECS / "walk_raw.json")
MEM2 = str(SPECS / "memory2.json")


def run(argv, capsys):
    status = run_command(argv)
    out = capsys.readouterr()
    return status, out.out, out.err


def write_spec(tmp_path, **overrides):
    doc = json.loads(Path(EVENTS).read_text())
    doc.update(overrides)
    p = tmp_path / "spec.json"
    p.write_text(json.dumps(doc))
    return str(p)


def test_validate_event_spec(capsys):
    status, out, _ = run(["validate", EVENTS], capsys)
    assert status == 0
    doc = json.loads(out)
    assert doc["valid"] and doc["states"] == ["s1", "s2"]
    assert "spec_digest" in doc and doc["seed"] == 2024


def test_validate_raw_and_memory_specs(capsys):
    assert run(["validate", RAW], capsys)[0] == 0
    assert run(["validate", MEM2], capsys)[0] == 0


def test_simulate_length_zero_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        run_command(["simulate", EVENTS, "--length", "0"])
    assert exc.value.code == 2


def test_main_exit_codes():
    cmd = [sys.executable, "-m", "markovchaos.cli"]
    assert subprocess.run(cmd + ["simulate", EVENTS, "--length", "0"],
                          capture_output=True).returncode == 2
    assert subprocess.run(cmd + ["validate", EVENTS], capture_output=True).returncode == 0
    assert subprocess.run(cmd, capture_output=True).returncode == 2


def test_validation_failure_exit_1(tmp_path, capsys):
    bad = write_spec(tmp_path, transitions=[[0.7, 0.4], [0.5, 0.5]])
    status, _, err = run(["validate", bad], capsys)
    assert status == 1 and "RowSumInvalid" in err


def test_schema_error_reports_field_path(tmp_path, capsys):
    bad = write_spec(tmp_path, order="two")
    status, _, err = run(["validate", bad], capsys)
    assert status == 1 and "$.order" in err
    with pytest.raises(ConfigParseError, match=r"\$\.transitions\[1\]\[0\]"):
        load_chain_spec({**json.loads(Path(EVENTS).read_text()),
                         "transitions": [[0.5, 0.5], ["x", 0.5]]})


def test_missing_and_malformed_files(tmp_path, capsys):
    assert run(["validate", str(tmp_path / "nope.json")], capsys)[0] == 1
    (tmp_path / "broken.json").write_text("{not json")
    assert run(["validate", str(tmp_path / "broken.json")], capsys)[0] == 1


def test_state_count_mismatch(tmp_path):
    with pytest.raises(ConfigParseError):
        load_chain_spec({**json.loads(Path(EVENTS).read_text()),
                         "transitions": [[0.5, 0.25, 0.25]] * 3, "strict_positivity": False})


def test_simulate_byte_identical(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run(["simulate", EVENTS, "--length", "500", "-o", str(a)], capsys)[0] == 0
    assert run(["simulate", EVENTS, "--length", "500", "-o", str(b)], capsys)[0] == 0
    assert a.read_bytes() == b.read_bytes()
    text = a.read_text()
    assert "# spec_digest=" in text and "# seed=2024" in text
    spec = load_chain_spec(EVENTS)
    path = read_path_csv(str(a), spec.space)
    assert len(path) == 500 and path[0] == 0


def test_seed_flag_changes_output(capsys):
    _, out1, _ = run(["simulate", EVENTS, "--length", "200"], capsys)
    _, out2, _ = run(["simulate", EVENTS, "--length", "200", "--seed", "5"], capsys)
    assert out1 != out2 and "# seed=5" in out2


def test_path_csv_roundtrip():
    spec = load_chain_spec(RAW)
    text = path_to_csv([1, 2, 3, 2], spec.space, {"seed": 1})
    assert text.splitlines()[1:3] == ["step,state_label", "0,2"]
    assert read_path_csv(text, spec.space).tolist() == [1, 2, 3, 2]
    with pytest.raises(ValidationError, match="UnknownState"):
        read_path_csv("step,state_label\n0,9\n", spec.space)


def test_analyze_report(tmp_path, capsys):
    status, out, _ = run(["analyze", EVENTS, "--window", "10", "--epsilon0", "0.5"], capsys)
    assert status == 0
    doc = json.loads(out)
    assert doc["window"] == 10 and doc["epsilon0"] == 0.5
    assert len(doc["witnesses"]) == 55
    assert doc["spec_digest"] and doc["seed"] == 2024


def test_analyze_delta_recurrence(capsys):
    base = ["analyze", EVENTS, "--window", "10", "--epsilon0", "0.5", "--max-witnesses", "5"]
    _, eq, _ = run(base, capsys)
    status, out, _ = run(base + ["--recurrence", "delta"], capsys)
    assert status == 0
    doc = json.loads(out)
    assert doc["recurrence"] == "delta"
    assert doc["witnesses"] == json.loads(eq)["witnesses"]
    _, loose, _ = run(base + ["--recurrence", "delta", "--tolerance", "0.01"], capsys)
    assert json.loads(loose)["recurrences"] >= doc["recurrences"]


def test_analyze_from_csv(tmp_path, capsys):
    p = tmp_path / "p.csv"
    run(["simulate", EVENTS, "--length", "3000", "-o", str(p)], capsys)
    status, out, _ = run(["analyze", EVENTS, "--path", str(p), "--window", "5"], capsys)
    assert status == 0 and json.loads(out)["path_length"] == 3000


def test_analyze_threshold_error(capsys):
    status, _, err = run(["analyze", EVENTS, "--epsilon0", "3"], capsys)
    assert status == 1 and "ThresholdAboveDiameter" in err


def test_certify_depth3(capsys):
    status, out, _ = run(["certify", EVENTS, "--depth", "3"], capsys)
    assert status == 0
    doc = json.loads(out)
    assert doc["separation"][0]["degree"] == 1
    assert doc["separation"][0]["epsilon0"] == 0.5
    assert doc["diameter"]["passed"] and doc["devaney"]["passed"]
    assert doc["similarity_coverage"]["passed"]
    assert len(doc["devaney"]["transitivity_witness"]) == 10


def test_certify_budget(monkeypatch, capsys):
    monkeypatch.setenv("MARKOVCHAOS_ENUM_BUDGET", "16")
    status, _, err = run(["certify", EVENTS, "--depth", "3"], capsys)
    assert status == 1 and "EnumerationBudgetExceeded" in err


def test_coverage_csv_and_json(capsys):
    status, out, _ = run(["coverage", RAW, "--word-length", "2", "--length", "5000"], capsys)
    assert status == 0
    rows = [r for r in out.splitlines() if not r.startswith("#")]
    assert rows[0] == "word,admissible,count"
    table = {r.split(",")[0]: r.split(",")[1:] for r in rows[1:]}
    assert table["4 3"][0] == "1" and table["4 4"] == ["0", "0"]
    status, out, _ = run(["coverage", RAW, "--word-length", "3", "--format", "json"], capsys)
    doc = json.loads(out)
    assert doc["forbidden_found"] == [] and doc["spec_digest"]


def test_memory_chain_simulation(capsys):
    status, out, _ = run(["simulate", MEM2, "--length", "50"], capsys)
    assert status == 0
    rows = [r for r in out.splitlines() if not r.startswith("#")]
    assert len(rows) == 51


def test_example_walk_outputs(tmp_path, capsys):
    a, b = tmp_path / "a", tmp_path / "b"
    assert run(["example-walk", "--outdir", str(a)], capsys)[0] == 0
    assert run(["example-walk", "--outdir", str(b)], capsys)[0] == 0
    golden = Path(__file__).parent / "golden"
    for name in ("walk_spec.json", "walk_trace.csv", "walk_trace.svg", "walk_path.csv",
                 "walk_events.csv"):
        assert (a / name).read_bytes() == (b / name).read_bytes()
        assert (a / name).read_bytes() == (golden / name).read_bytes()


def test_example_walk_spec_reproduces_path(tmp_path, capsys):
    run(["example-walk", "--outdir", str(tmp_path)], capsys)
    spec_file = str(tmp_path / "walk_spec.json")
    status, out, _ = run(["validate", spec_file], capsys)
    digest = json.loads(out)["spec_digest"]
    for name in ("walk_trace.csv", "walk_trace.svg", "walk_path.csv", "walk_events.csv"):
        assert f"spec_digest={digest}" in (tmp_path / name).read_text()
    _, sim, _ = run(["simulate", spec_file], capsys)
    strip = lambda t: [ln for ln in t.splitlines() if not ln.startswith("#")]
    assert strip(sim) == strip((tmp_path / "walk_path.csv").read_text())
