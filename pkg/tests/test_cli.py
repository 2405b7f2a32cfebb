import json

import pytest

from helpers import make_workspace, write_roster
from panelaudit import cli
from panelaudit.errors import ConvergenceError
from panelaudit.io_pajek import read_net
from panelaudit.model import BipartiteGraph


@pytest.fixture()
def workspace(tmp_path):
    return make_workspace(tmp_path / "ws")


def run(argv):
    return cli.main([str(a) for a in argv])


def test_build_coauthorship(workspace, tmp_path, capsys):
    out = tmp_path / "nets"
    code = run(["build", "--kind", "coauthorship",
                "--roster", workspace["roster_a"],
                "--pubs", workspace["pubs_a"], "--out", out])
    assert code == 0
    line = capsys.readouterr().out.strip()
    assert line.startswith("coauthorship: n=7 m=")
    assert "components=2" in line
    g = read_net(out / "coauthorship.net")
    assert g.node_count == 7
    payload = json.loads((out / "coauthorship.json").read_text())
    assert payload["type"] == "weighted_graph"
    assert any(n["is_panelist"] for n in payload["nodes"])


def test_build_journal(workspace, tmp_path, capsys):
    out = tmp_path / "nets"
    assert run(["build", "--kind", "journal", "--roster", workspace["roster_a"],
                "--pubs", workspace["pubs_a"], "--out", out]) == 0
    stdout = capsys.readouterr().out
    assert "journal_bipartite: left=3 right=3" in stdout
    assert "journal_projection:" in stdout
    b = read_net(out / "journal_bipartite.net")
    assert isinstance(b, BipartiteGraph)


def test_build_affinity(workspace, tmp_path, capsys):
    out = tmp_path / "nets"
    assert run(["build", "--kind", "affinity", "--roster", workspace["roster_a"],
                "--pubs", workspace["pubs_a"],
                "--affiliations", workspace["affs_a"], "--out", out]) == 0
    stdout = capsys.readouterr().out
    assert "affinity_bipartite:" in stdout
    assert (out / "affinity_scholars.net").exists()
    assert (out / "affinity_institutions.net").exists()


def test_build_affinity_needs_affiliations(workspace, tmp_path, capsys):
    code = run(["build", "--kind", "affinity", "--roster", workspace["roster_a"],
                "--pubs", workspace["pubs_a"], "--out", tmp_path / "x"])
    assert code == 2
    assert "requires --affiliations" in capsys.readouterr().err


def test_build_bad_kind_usage_error(workspace, tmp_path):
    with pytest.raises(SystemExit) as exc:
        run(["build", "--kind", "mystery", "--roster", workspace["roster_a"],
             "--pubs", workspace["pubs_a"], "--out", tmp_path / "x"])
    assert exc.value.code == 2


def test_build_missing_file_exit_2(workspace, tmp_path, capsys):
    code = run(["build", "--kind", "coauthorship",
                "--roster", tmp_path / "nope.json",
                "--pubs", workspace["pubs_a"], "--out", tmp_path / "x"])
    assert code == 2


def test_analyze_bundle(workspace, tmp_path, capsys):
    out = tmp_path / "report"
    code = run(["analyze", "--config", workspace["config"], "--out", out])
    assert code == 0
    assert "wrote" in capsys.readouterr().out
    payload = json.loads((out / "report.json").read_text())
    assert payload["kind"] == "comparison"
    assert (out / "report.md").exists()
    assert (out / "figures" / "degree_ecdf.png").exists()


def test_analyze_no_figures_and_formats(workspace, tmp_path):
    out = tmp_path / "lean"
    assert run(["analyze", "--config", workspace["config"], "--out", out,
                "--formats", "json", "--no-figures"]) == 0
    assert (out / "report.json").exists()
    assert not (out / "report.md").exists()
    assert not (out / "figures").exists()


def test_analyze_rejects_unknown_setting(workspace, tmp_path, capsys):
    cfg = workspace["config"].parent / "bad.toml"
    cfg.write_text('[analysis]\ncontrol = "lottery"\nmystery = 1\n'
                   + workspace["config"].read_text().split("\n", 3)[3])
    code = run(["analyze", "--config", cfg, "--out", tmp_path / "x"])
    assert code == 2
    assert "unknown analysis settings" in capsys.readouterr().err


def test_analyze_missing_config_exit_2(tmp_path, capsys):
    assert run(["analyze", "--config", tmp_path / "none.toml",
                "--out", tmp_path / "x"]) == 2


def test_analyze_byte_identical_reruns(workspace, tmp_path):
    out1, out2 = tmp_path / "r1", tmp_path / "r2"
    assert run(["analyze", "--config", workspace["config"], "--out", out1]) == 0
    assert run(["analyze", "--config", workspace["config"], "--out", out2]) == 0
    files1 = sorted(p.relative_to(out1) for p in out1.rglob("*") if p.is_file())
    files2 = sorted(p.relative_to(out2) for p in out2.rglob("*") if p.is_file())
    assert files1 == files2 and files1
    for rel in files1:
        assert (out1 / rel).read_bytes() == (out2 / rel).read_bytes(), rel


def test_computation_error_maps_to_exit_3(workspace, tmp_path, monkeypatch, capsys):
    def boom(*a, **k):
        raise ConvergenceError("did not converge in 10000 iterations", 10000)
    monkeypatch.setattr(cli, "analyze_panel", boom)
    code = run(["analyze", "--config", workspace["config"], "--out", tmp_path / "x"])
    assert code == 3
    assert "did not converge" in capsys.readouterr().err


def test_simulate_run(workspace, tmp_path, capsys):
    out = tmp_path / "sim"
    code = run(["simulate", "--pool", workspace["pool"],
                "--roster", workspace["roster_a"],
                "--pubs", workspace["pubs_a"],
                "--indicator", "fragmentation_ratio",
                "--size", 3, "--samples", 40, "--seed", 11, "--out", out])
    assert code == 0
    stdout = capsys.readouterr().out
    assert "indicator=fragmentation_ratio" in stdout
    payload = json.loads((out / "run.json").read_text())
    assert payload["samples"] == 40
    assert payload["seed"] == 11
    assert len(payload["values"]) == 40
    assert (out / "values.csv").read_text().splitlines()[0] == "draw,value"


def test_simulate_deterministic_and_seed_sensitive(workspace, tmp_path):
    def values(out, seed):
        run(["simulate", "--pool", workspace["pool"],
             "--roster", workspace["roster_a"], "--pubs", workspace["pubs_a"],
             "--indicator", "density", "--size", 3, "--samples", 25,
             "--seed", seed, "--out", out])
        return (out / "run.json").read_bytes()

    b1 = values(tmp_path / "s1", 5)
    b2 = values(tmp_path / "s2", 5)
    b3 = values(tmp_path / "s3", 6)
    assert b1 == b2
    assert b1 != b3


def test_simulate_exhaustive(workspace, tmp_path, capsys):
    out = tmp_path / "ex"
    code = run(["simulate", "--pool", workspace["pool"],
                "--roster", workspace["roster_a"], "--pubs", workspace["pubs_a"],
                "--indicator", "average_degree", "--size", 2,
                "--exhaustive", "--out", out])
    assert code == 0
    payload = json.loads((out / "run.json").read_text())
    assert payload["exhaustive"] is True
    assert payload["samples"] == 66          # C(12, 2)
    assert payload["seed"] is None


def test_simulate_figure(workspace, tmp_path):
    out = tmp_path / "fig"
    assert run(["simulate", "--pool", workspace["pool"],
                "--roster", workspace["roster_a"], "--pubs", workspace["pubs_a"],
                "--indicator", "density", "--size", 2, "--samples", 10,
                "--seed", 1, "--figures", "--out", out]) == 0
    assert (out / "null_distribution.png").exists()


def test_simulate_default_size_is_official(workspace, tmp_path):
    out = tmp_path / "dflt"
    assert run(["simulate", "--pool", workspace["pool"],
                "--roster", workspace["roster_a"], "--pubs", workspace["pubs_a"],
                "--indicator", "density", "--samples", 5, "--seed", 2,
                "--out", out]) == 0
    payload = json.loads((out / "run.json").read_text())
    assert payload["panel_size"] == 5        # alpha official size


def test_simulate_pool_too_small_exit_2(workspace, tmp_path, capsys):
    small = write_roster(tmp_path / "small.json", "small", 2010, 40,
                         [f"m{i}" for i in range(3)])
    code = run(["simulate", "--pool", workspace["pool"], "--roster", small,
                "--pubs", workspace["pubs_a"], "--indicator", "density",
                "--samples", 5, "--seed", 2, "--out", tmp_path / "x"])
    assert code == 2


def test_usage_error_without_subcommand():
    with pytest.raises(SystemExit) as exc:
        cli.main([])
    assert exc.value.code == 2
