import io
import json
import os
import subprocess
import sys
from math import pi

import pytest

from coulomb_holes.cli import EXIT_INVALID, EXIT_OK, EXIT_TOLERANCE, JobSpec, ValidationError, parse_mini, run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_constant_ginibre_disk():
    code, out, _ = call("constant", "--potential", "ginibre", "--region", "disk:a=0.5", "--beta", "2")
    assert code == EXIT_OK
    d = json.loads(out)
    assert d["C"] == pytest.approx(2 * 0.5 ** 4 / 8, rel=1e-15)
    assert d["method"] == "closed-form"


def test_constant_cross_check():
    code, out, _ = call("constant", "--potential", "ml:b=2", "--region", "ellipse:a=0.3,c=0.5", "--tol", "1e-7")
    assert code == EXIT_OK and json.loads(out)["generic_rel_diff"] < 1e-7


def test_series_T0():
    code, out, _ = call("series", "--family", "T", "--v", "0", "--alpha", "1.7")
    assert code == EXIT_OK
    row = json.loads(out)[0]
    assert row["recursive"] == pytest.approx(pi ** 3 / 32, rel=1e-15)
    assert row["direct"] == pytest.approx(pi ** 3 / 32, rel=1e-13)


def test_series_d_csv():
    code, out, _ = call("series", "--family", "d", "--v", "2", "--format", "csv")
    assert code == EXIT_OK and out.splitlines()[0] == "b,k,l,d"


def test_verify_ml_ellipse():
    code, out, _ = call("verify", "--potential", "ml:b=2", "--region", "ellipse:a=0.3,c=0.5", "--nmax", "8")
    assert code == EXIT_OK
    d = json.loads(out)
    assert d["passed"] and d["max_abs_residual"] < 1e-6


def test_verify_unbounded_reports_log_moment():
    code, out, _ = call("verify", "--potential", "eg:tau=0.2", "--region", "ellipse-complement:a=0.45,c=0.75",
                        "--nmax", "6")
    assert code == EXIT_OK and "log_residual" in json.loads(out)


def test_regression_default_matrix():
    code, out, _ = call("regression")
    d = json.loads(out)
    assert code == EXIT_OK and d["n_failed"] == 0 and d["n_rows"] > 10


def test_regression_empty_and_wrong(tmp_path):
    empty = tmp_path / "empty.json"
    empty.write_text("[]")
    code, out, _ = call("regression", "--matrix", str(empty))
    assert code == EXIT_OK and json.loads(out)["n_rows"] == 0
    wrong = tmp_path / "wrong.json"
    wrong.write_text(json.dumps([{"name": "bad", "job": {"command": "constant", "potential": {"name": "ginibre"},
                                                         "region": {"name": "disk", "a": 0.5}},
                                  "expected": 0.02, "rel_tol": 1e-10}]))
    code, _, _ = call("regression", "--matrix", str(wrong))
    assert code == EXIT_TOLERANCE


@pytest.mark.parametrize("argv", [
    ("constant", "--potential", "ginibre", "--region", "disk:a=1.5"),
    ("constant", "--potential", "ginibre", "--region", "disk:a=0.5,zz=1"),
    ("constant", "--potential", "nope", "--region", "disk:a=0.5"),
    ("constant", "--potential", "ginibre"),
    ("constant", "--potential", "ginibre", "--region", "disk:a=0.5", "--beta", "-1"),
    ("bogus",),
])
def test_validation_errors(argv):
    code, _, err = call(*argv)
    assert code == EXIT_INVALID and err


def test_jobspec_round_trip():
    spec = JobSpec("constant", {"name": "ml", "b": 2.0}, {"name": "disk", "a": 0.3, "x0": 0.1}, beta=4.0,
                   tol=1e-8, seed=5)
    again = JobSpec.from_json(spec.to_json())
    assert again == spec and again.to_json() == spec.to_json()
    with pytest.raises(ValidationError):
        JobSpec.from_dict({"command": "constant", "colour": "red"})


def test_spec_file_and_override(tmp_path):
    f = tmp_path / "job.json"
    f.write_text(json.dumps({"command": "constant", "potential": {"name": "ginibre"},
                             "region": {"name": "disk", "a": 0.5}, "beta": 2.0}))
    code, out, _ = call("constant", "--spec", str(f), "--beta", "4")
    assert code == EXIT_OK and json.loads(out)["C"] == pytest.approx(4 * 0.5 ** 4 / 8)


def test_density_csv(tmp_path):
    out = tmp_path / "nu.csv"
    code, _, _ = call("density", "--potential", "ml:b=2", "--region", "rectangle:a1=0.1,a2=0.5,c1=-0.2,c2=0.3",
                      "--format", "csv", "--out", str(out))
    assert code == EXIT_OK
    raw = out.read_bytes()
    assert b"\r\n" not in raw
    lines = raw.decode().splitlines()
    assert lines[0].startswith("# ") and json.loads(lines[0][2:])["total_mass"] > 0
    assert lines[1] == "chart_id,t,x,y,density,measure_kind"
    assert len(lines) == 2 + 4 * 64
    assert not [p for p in os.listdir(tmp_path) if p.startswith(".tmp-")]


def test_sweep_csv():
    code, out, _ = call("constant", "--potential", "ginibre", "--region", "disk:a=0.1", "--sweep", "a=0.1:0.5:5",
                        "--format", "csv")
    assert code == EXIT_OK
    rows = out.splitlines()[1:]
    assert len(rows) == 5
    assert float(rows[-1].split(",")[1]) == pytest.approx(2 * 0.5 ** 4 / 8)


def test_fekete_sidecar(tmp_path):
    out = tmp_path / "cloud.csv"
    code, _, _ = call("fekete", "--potential", "ginibre", "--region", "disk:a=0.3", "--n-points", "32",
                      "--max-iter", "20", "--seed", "3", "--out", str(out))
    assert code == EXIT_OK
    side = json.loads((tmp_path / "cloud.csv.json").read_text())
    assert side["seed"] == 3 and side["n_points"] == 32
    assert len(out.read_text().splitlines()) == 33


def test_floats_at_17_digits():
    code, out, _ = call("series", "--v", "0", "--alpha", "1")
    assert "0.96894614625936926" in out


def test_parse_mini():
    assert parse_mini("ML:b=2") == {"name": "ml", "b": 2.0}
    with pytest.raises(ValidationError):
        parse_mini("disk:a")


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "coulomb_holes", "constant", "--potential", "ginibre",
                        "--region", "disk:a=0.5"], capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout)["C"] == pytest.approx(0.015625)
