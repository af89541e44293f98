"""Secondary-component tests: regenerate all four figure kinds from the
checked-in fixtures, verify determinism, the CDF self-test KS band, and the
error exits.  Run with `pytest plots/` (independent of the primary suite).
"""

import json
import pathlib
import subprocess
import sys

import pytest

HERE = pathlib.Path(__file__).parent
FIX = HERE / "fixtures"


def run(script, *args):
    return subprocess.run([sys.executable, str(HERE / script), *args],
                          capture_output=True, text=True)


def test_fixtures_exist():
    for name in ("count.csv", "crt.csv", "diam.csv", "calib.json",
                 "local_a.csv", "local_b.csv", "synth_diam.csv",
                 "synth_calib.json"):
        assert (FIX / name).exists(), f"missing fixture {name}; run make_fixtures.py"


def test_diameter_cdf(tmp_path):
    out = tmp_path / "cdf.png"
    proc = run("diameter_cdf.py", "--in", str(FIX / "diam.csv"),
               "--crt", str(FIX / "crt.csv"),
               "--calib", str(FIX / "calib.json"), "--out", str(out))
    assert proc.returncode == 0, proc.stderr
    assert out.stat().st_size > 0
    lines = [json.loads(line) for line in proc.stdout.splitlines()]
    assert {row["n"] for row in lines} == {1024, 2048, 4096, 8192}


def test_diameter_cdf_selftest_within_ks_band(tmp_path):
    out = tmp_path / "cdf_synth.png"
    proc = run("diameter_cdf.py", "--in", str(FIX / "synth_diam.csv"),
               "--crt", str(FIX / "crt.csv"),
               "--calib", str(FIX / "synth_calib.json"), "--out", str(out))
    assert proc.returncode == 0, proc.stderr
    rows = [json.loads(line) for line in proc.stdout.splitlines()]
    assert len(rows) == 1
    assert rows[0]["ks"] < rows[0]["band_1pct"], rows


def test_diameter_cdf_model_only(tmp_path):
    out = tmp_path / "model.png"
    proc = run("diameter_cdf.py", "--crt", str(FIX / "crt.csv"), "--out", str(out))
    assert proc.returncode == 0, proc.stderr
    assert out.stat().st_size > 0


def test_diameter_cdf_error_exits(tmp_path):
    empty = tmp_path / "empty.csv"
    empty.write_text("omega,n,sample_idx,diameter\n")
    proc = run("diameter_cdf.py", "--in", str(empty), "--crt", str(FIX / "crt.csv"),
               "--calib", str(FIX / "calib.json"), "--out", str(tmp_path / "x.png"))
    assert proc.returncode != 0
    bad = tmp_path / "bad.csv"
    bad.write_text("a,b\n1,2\n")
    proc = run("diameter_cdf.py", "--in", str(bad), "--crt", str(FIX / "crt.csv"),
               "--calib", str(FIX / "calib.json"), "--out", str(tmp_path / "x.png"))
    assert proc.returncode != 0
    assert "missing column" in proc.stderr


def test_tv_decay_single_file(tmp_path):
    out = tmp_path / "tv.png"
    proc = run("tv_decay.py", "--in", str(FIX / "local_a.csv"), "--out", str(out))
    assert proc.returncode == 0, proc.stderr
    rows = [json.loads(line) for line in proc.stdout.splitlines()]
    assert [r["n"] for r in rows] == [32, 64, 128]


def test_tv_decay_identical_inputs_flat_zero(tmp_path):
    out = tmp_path / "tv0.png"
    proc = run("tv_decay.py", "--in", str(FIX / "local_a.csv"),
               str(FIX / "local_a.csv"), "--out", str(out))
    assert proc.returncode == 0, proc.stderr
    rows = [json.loads(line) for line in proc.stdout.splitlines()]
    assert all(r["tv"] == 0.0 for r in rows)


def test_tv_decay_two_runs(tmp_path):
    proc = run("tv_decay.py", "--in", str(FIX / "local_a.csv"),
               str(FIX / "local_b.csv"), "--out", str(tmp_path / "tv2.png"))
    assert proc.returncode == 0, proc.stderr
    rows = [json.loads(line) for line in proc.stdout.splitlines()]
    assert all(r["tv"] > 0.0 for r in rows)  # independent seeds differ


def test_class_probs(tmp_path):
    out = tmp_path / "classes.png"
    proc = run("class_probs.py", "--in", str(FIX / "count.csv"), "--out", str(out))
    assert proc.returncode == 0, proc.stderr
    assert out.stat().st_size > 0
    proc = run("class_probs.py", "--in", str(FIX / "crt.csv"),
               "--out", str(tmp_path / "y.png"))
    assert proc.returncode != 0  # wrong columns


def test_moment_scaling_slope(tmp_path):
    out = tmp_path / "scaling.png"
    proc = run("moment_scaling.py", "--in", str(FIX / "diam.csv"), "--out", str(out))
    assert proc.returncode == 0, proc.stderr
    row = json.loads(proc.stdout.splitlines()[0])
    assert abs(row["slope"] - 0.5) < 0.02


def test_determinism(tmp_path):
    a, b = tmp_path / "a.png", tmp_path / "b.png"
    for target in (a, b):
        proc = run("class_probs.py", "--in", str(FIX / "count.csv"),
                   "--out", str(target))
        assert proc.returncode == 0
    assert a.read_bytes() == b.read_bytes()
