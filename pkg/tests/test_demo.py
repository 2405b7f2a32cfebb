"""End-to-end smoke tests over the committed demo dataset."""

import json
import subprocess
import sys
from pathlib import Path

DEMO = Path(__file__).resolve().parent.parent / "demo"


def _cli(args, cwd):
    return subprocess.run([sys.executable, "-m", "panelaudit.cli", *args],
                          capture_output=True, text=True, cwd=cwd)


def test_demo_analyze_bundle(tmp_path):
    out = tmp_path / "out"
    r = _cli(["analyze", "--config", str(DEMO / "audit.toml"),
              "--out", str(out)], cwd=tmp_path)
    assert r.returncode == 0, r.stderr

    rep = json.loads((out / "report.json").read_text(encoding="utf-8"))
    assert rep["kind"] == "comparison"
    assert [p["panel_label"] for p in rep["panels"]] == ["alpha", "beta",
                                                         "lottery"]
    assert rep["control_label"] == "lottery"
    assert (out / "figures" / "degree_ecdf.png").is_file()
    assert (out / "csv" / "ks_tests.csv").is_file()

    # the appointed panels should stand out against the lottery control
    ks = {k["label"]: k for k in rep["ks_tests"]}
    assert ks["alpha vs lottery"]["p_adjusted"] < 0.01
    assert ks["beta vs lottery"]["p_adjusted"] < 0.01
    assert ks["alpha vs beta"]["p_adjusted"] > 0.5

    deltas = {(d["panel_label"], d["indicator"]): d for d in rep["deltas"]}
    assert deltas[("alpha", "fragmentation_pct")]["delta"] < 0
    assert deltas[("alpha", "density")]["delta"] > 0


def test_demo_simulate_exhaustive(tmp_path):
    sim = tmp_path / "sim"
    r = _cli(["simulate", "--pool", str(DEMO / "data" / "pool.json"),
              "--roster", str(DEMO / "data" / "lottery_roster.json"),
              "--pubs", str(DEMO / "data" / "registry_pubs.csv"),
              "--indicator", "fragmentation_ratio",
              "--exhaustive", "--out", str(sim)], cwd=tmp_path)
    assert r.returncode == 0, r.stderr
    run = json.loads((sim / "run.json").read_text(encoding="utf-8"))
    assert run["exhaustive"] is True
    assert run["samples"] == 8008          # C(16, 6) pool draws
    assert 0.0 <= run["percentile"] <= 100.0
    assert "indicator=fragmentation_ratio" in r.stdout
