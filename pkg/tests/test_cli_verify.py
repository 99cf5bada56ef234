import json
import subprocess
import sys

import pytest

from frozen import QUARTER_LOG_401
from p1stab.cli import main, parse_hpoint
from p1stab.coords import DomainError
from p1stab.verify import (
    SIGMA2,
    CounterexampleConfig,
    run_property_suite,
    verify_counterexample,
    verify_length_bound,
    verify_nonunique_geodesic,
    verify_quotient_counterexample,
)

FAST = CounterexampleConfig(window=10, k_range=(-3, 3), n_paths=10)


def test_counterexample_small_window_passes():
    rep = verify_counterexample(FAST)
    assert rep.status == "pass", rep.summary()
    assert rep.values["d(s1,s3)"] == pytest.approx(QUARTER_LOG_401, abs=1e-12)


def test_counterexample_tight_tolerance_reports_margins():
    # the closed form reproduces the witness value to the last bit, so even 1e-15 holds
    rep = verify_counterexample(CounterexampleConfig(window=10, k_range=(-3, 3), n_paths=5, tol=1e-15))
    assert abs(rep.values["d(s1,s2)"] - rep.values["expected"]) <= 1e-15
    assert rep.tolerances["inequality"] == 1e-15
    assert set(rep.checks) >= {"wall infimum from s3 >= 0.05 - tol"}


def test_quotient_counterexample_and_degenerate_start():
    rep = verify_quotient_counterexample(FAST)
    assert rep.status == "pass", rep.summary()
    deg = verify_quotient_counterexample(FAST, start=SIGMA2)
    assert any("vacuous" in n for n in deg.notes)
    assert "wall infimum from s1 >= d(s1,s2) - tol" not in deg.checks


def test_nonunique_geodesic():
    assert verify_nonunique_geodesic(0.01).status == "pass"
    loose = verify_nonunique_geodesic(0.1)
    assert "bent_additivity_defect" in loose.values
    for bad in (0.0, -1.0, 0.2):
        with pytest.raises(DomainError):
            verify_nonunique_geodesic(bad)


def test_length_bound_small():
    rep = verify_length_bound(10, seed=3)
    assert rep.status == "pass", rep.summary()
    with pytest.raises(DomainError):
        verify_length_bound(0)


def test_property_suite_and_negative_control():
    assert run_property_suite(42, 1).status == "pass"
    rep = run_property_suite(42, 30)
    assert rep.status == "pass", rep.summary()
    bad = run_property_suite(42, 30, corrupt=True)
    assert bad.status == "fail" and "symmetry:d" in bad.failures


def test_parse_hpoint():
    assert parse_hpoint("0.5+10i") == 0.5 + 10j
    assert parse_hpoint("2j") == 2j
    assert parse_hpoint("0.3") == 0.3


def test_cli_dz_and_json(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert main(["--json", str(out), "dz", "1i", "2i"]) == 0
    data = json.loads(out.read_text())
    assert data[0]["values"]["d_Z"] == pytest.approx(0.6931471805599453)
    assert main(["dz", "1", "2i"]) == 2


def test_cli_dist_with_oracle(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    a.write_text(json.dumps({"form": "geometric", "tau": [0.5, 10], "x": 0, "y": 0}))
    b.write_text(json.dumps({"form": "boundary", "tau": 0.5, "x": QUARTER_LOG_401, "y": 0}))
    out = tmp_path / "d.json"
    assert main(["--json", str(out), "dist", str(a), str(b), "--oracle-window", "1000"]) == 0
    vals = json.loads(out.read_text())[0]["values"]
    assert vals["d"] == pytest.approx(QUARTER_LOG_401, abs=1e-12)
    assert main(["dist", str(a), str(b), "--quotient"]) == 0


def test_cli_geodesic_csv(tmp_path):
    out = tmp_path / "g.csv"
    assert main(["--csv", str(out), "geodesic", "--epsilon", "0.01", "--samples", "33"]) == 0
    assert len(out.read_text().strip().splitlines()) == 34


def test_cli_counterexample_fast():
    assert main(["counterexample", "--k-range", "-2", "2", "--window", "10"]) == 0


def test_cli_suite_is_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["--json", str(a), "suite", "--seed", "7", "--trials", "10"]) == 0
    assert main(["--json", str(b), "suite", "--seed", "7", "--trials", "10"]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "p1stab", "dz", "1i", "2i"], capture_output=True, text=True)
    assert res.returncode == 0 and "d_Z = 0.693147" in res.stdout
