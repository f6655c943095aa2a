import json
import math

import numpy as np
import pytest

from conftest import rot2
from orbit_isom.cli import main
from orbit_isom.isom_quotient import validate_report_schema

C5 = "fixtures/c5.json"


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_analyze_c5_json(capsys):
    code, out, err = run(capsys, "analyze", "--input", C5)
    assert code == 0
    rep = json.loads(out)
    validate_report_schema(rep)
    assert [f["name"] for f in rep["compactFactors"]] == ["U(1)"]
    assert rep["kernel"]["finiteOrder"] == 5


def test_analyze_text_format(capsys):
    code, out, _ = run(capsys, "analyze", "--input", C5, "--format", "text")
    assert code == 0
    assert "quotient isometry report" in out
    assert "U(1)" in out


def test_analyze_missing_file(capsys):
    code, out, err = run(capsys, "analyze", "--input", "missing.json")
    assert code == 1
    assert "error[parse]" in err


def test_analyze_ambiguous_spec_exit_2(capsys, tmp_path):
    theta = 2.0 * math.pi / 3.0
    doc = {
        "dimension": 2,
        "kind": "finite",
        "generators": [
            [[repr(float(v)) for v in row] for row in rot2(theta)],
            [[repr(float(v)) for v in row] for row in rot2(theta + 3e-8)],
        ],
    }
    path = tmp_path / "ambiguous.json"
    path.write_text(json.dumps(doc))
    code, out, err = run(capsys, "analyze", "--input", str(path))
    assert code == 2
    assert "error" in err


def test_analyze_output_file(capsys, tmp_path):
    out_path = tmp_path / "report.json"
    code, out, _ = run(capsys, "analyze", "--input", C5,
                       "--output", str(out_path))
    assert code == 0
    assert out == ""
    validate_report_schema(json.loads(out_path.read_text()))


def test_analyze_catalog_id(capsys):
    code, out, _ = run(capsys, "analyze", "--input", "catalog:hopf-u1-r4")
    assert code == 0
    rep = json.loads(out)
    assert rep["compactFactors"][0]["name"] == "U(2)/center"
    assert rep["kernel"]["circleDirections"] == 1


def test_metric_value(capsys):
    code, out, _ = run(capsys, "metric", "--input", C5, "1,0", "0,1")
    assert code == 0
    payload = json.loads(out)
    assert abs(payload["distance"] - 2.0 * math.sin(math.pi / 20)) < 1e-9
    assert payload["groupOrder"] == 5


def test_metric_same_orbit(capsys):
    c, s = math.cos(2.0 * math.pi / 5), math.sin(2.0 * math.pi / 5)
    code, out, _ = run(capsys, "metric", "--input", C5,
                       "1,0", f"{c!r},{s!r}")
    assert code == 0
    assert json.loads(out)["distance"] < 1e-12


def test_metric_dimension_mismatch(capsys):
    code, _, err = run(capsys, "metric", "--input", C5, "1,0", "1,0,0")
    assert code == 1
    assert "dimension" in err


def test_metric_text_format(capsys):
    code, out, _ = run(capsys, "metric", "--input", C5, "1,0", "0,1",
                       "--format", "text")
    assert code == 0
    assert out.startswith("distance = 0.312869")


def test_lift_command(capsys):
    code, out, _ = run(capsys, "lift", "--seed", "3")
    assert code == 0
    payload = json.loads(out)
    assert payload["residual"] <= 1e-8
    lift = np.array(payload["lift"])
    assert np.max(np.abs(lift.T @ lift - np.eye(4))) < 1e-9


def test_catalog_listing(capsys):
    code, out, _ = run(capsys, "catalog")
    assert code == 0
    ids = [e["id"] for e in json.loads(out)]
    assert ids == ["hopf-u1-r4", "so2-tensor-so3-r6", "so2xso3-r5"]


def test_verify_subset(capsys):
    code, out, _ = run(capsys, "verify", "--only", "trichotomy",
                       "--format", "text")
    assert code == 0
    assert "PASS  5-irreducible-trichotomy" in out
    assert "1/1 suites passed" in out


def test_verify_no_match(capsys):
    code, _, err = run(capsys, "verify", "--only", "zzz")
    assert code == 1
    assert "no suite id" in err


def test_verify_json_format(capsys):
    code, out, _ = run(capsys, "verify", "--only", "trichotomy")
    assert code == 0
    payload = json.loads(out)
    assert payload[0]["suiteId"] == "5-irreducible-trichotomy"
    assert payload[0]["passed"] is True


def test_env_seed(capsys, monkeypatch):
    monkeypatch.setenv("ORBIT_ISOM_SEED", "17")
    code, out, _ = run(capsys, "analyze", "--input", C5)
    assert code == 0
    assert json.loads(out)["seed"] == 17


def test_flag_overrides_env_seed(capsys, monkeypatch):
    monkeypatch.setenv("ORBIT_ISOM_SEED", "17")
    code, out, _ = run(capsys, "analyze", "--input", C5, "--seed", "4")
    assert code == 0
    assert json.loads(out)["seed"] == 4


def test_bad_env_seed(capsys, monkeypatch):
    monkeypatch.setenv("ORBIT_ISOM_SEED", "xyz")
    code, _, err = run(capsys, "analyze", "--input", C5)
    assert code == 1
    assert "ORBIT_ISOM_SEED" in err


def test_analyze_round_trip_schema(capsys, tmp_path):
    # analyze output re-read as JSON parses and validates
    for source in (C5, "fixtures/q8.json", "catalog:hopf-u1-r4"):
        out_path = tmp_path / "r.json"
        code, _, _ = run(capsys, "analyze", "--input", source,
                         "--output", str(out_path))
        assert code == 0
        validate_report_schema(json.loads(out_path.read_text()))
