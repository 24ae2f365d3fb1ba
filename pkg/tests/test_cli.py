import json

import pytest

from evograph.cli import main
from evograph.io import export_edge_list, read_graph

from .conftest import complete_graph, two_triangles


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_generate_paper_parameters(tmp_path, capsys):
    out = tmp_path / "init.csv"
    code, _, _ = run(["generate", "--n", "400", "--factors", "8", "--score-max", "16", "--seed", "1", "-o", str(out)], capsys)
    assert code == 0
    g = read_graph(out)
    assert g.node_count == 400 and g.edge_count == 800


def test_generate_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (a, b):
        assert run(["generate", "--n", "50", "--seed", "1", "-o", str(path)], capsys)[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_generate_usage_error(capsys):
    code, _, err = run(["generate"], capsys)
    assert code == 1 and "error" in err
    assert run([], capsys)[0] == 1


def test_generate_unwritable(tmp_path, capsys):
    code, _, _ = run(["generate", "--n", "5", "-o", str(tmp_path / "missing" / "x.csv")], capsys)
    assert code == 2


def test_generate_bad_config(tmp_path, capsys):
    cfg = tmp_path / "run.ini"
    cfg.write_text("[generator]\nn = many\n")
    assert run(["generate", "--config", str(cfg)], capsys)[0] == 1
    cfg.write_text("[generator]\nn = 5\nbogus = 1\n")
    assert run(["generate", "--config", str(cfg)], capsys)[0] == 1
    assert run(["generate", "--config", str(tmp_path / "nope.ini")], capsys)[0] == 2


def test_flags_override_config(tmp_path, capsys, monkeypatch):
    cfg = tmp_path / "run.ini"
    cfg.write_text("[run]\nseed = 3\n[generator]\nn = 30\nedges = 10\n")
    code, out, _ = run(["generate", "--config", str(cfg), "--edges", "25"], capsys)
    assert code == 0
    rows = [ln for ln in out.splitlines() if ln and not ln.startswith(("#", "u,"))]
    assert len(rows) == 25

    flag_seed = run(["generate", "--config", str(cfg), "--seed", "4"], capsys)[1]
    file_seed = run(["generate", "--config", str(cfg)], capsys)[1]
    monkeypatch.setenv("EVOGRAPH_SEED", "4")
    env_ignored = run(["generate", "--config", str(cfg)], capsys)[1]
    env_used = run(["generate", "--n", "30", "--edges", "10"], capsys)[1]
    assert file_seed == env_ignored
    assert flag_seed != file_seed
    assert env_used == flag_seed


def test_evolve_outputs(tmp_path, capsys):
    init = tmp_path / "init.csv"
    run(["generate", "--n", "60", "--seed", "2", "-o", str(init)], capsys)
    final, trace, metrics, summary = (tmp_path / n for n in ("final.gexf", "trace.gexf", "m.json", "s.json"))
    code, out, _ = run(
        ["evolve", "--input", str(init), "--mean", "arithmetic", "--threshold", "6", "--p", "0.5", "--seed", "7",
         "-o", str(final), "--trace-out", str(trace), "--metrics-out", str(metrics), "--summary-out", str(summary),
         "--snapshots-dir", str(tmp_path / "snaps")],
        capsys,
    )
    assert code == 0
    assert "modularity=" in out and "truncated=false" in out
    assert json.loads(metrics.read_text())["node_count"] == 60
    assert final.read_text().startswith("<?xml") and 'mode="dynamic"' in trace.read_text()
    summary_data = json.loads(summary.read_text())
    assert len(list((tmp_path / "snaps").iterdir())) == summary_data["sweeps"] + 1


def test_evolve_p0_identity(tmp_path, capsys):
    init, final = tmp_path / "init.csv", tmp_path / "final.csv"
    run(["generate", "--n", "40", "--seed", "2", "-o", str(init)], capsys)
    assert run(["evolve", "--input", str(init), "--p", "0", "-o", str(final)], capsys)[0] == 0
    assert final.read_text() == init.read_text()


def test_evolve_generates_when_no_input(tmp_path, capsys):
    out = tmp_path / "g.csv"
    code, _, _ = run(["evolve", "--n", "30", "--seed", "1", "--mean", "geometric", "-o", str(out)], capsys)
    assert code == 0 and read_graph(out).node_count == 30
    assert run(["evolve"], capsys)[0] == 1


def test_evolve_growth(tmp_path, capsys):
    summary = tmp_path / "s.json"
    code, _, _ = run(["evolve", "--n", "30", "--seed", "1", "--growth-pool", "5", "--outer-steps", "3", "--summary-out", str(summary)], capsys)
    assert code == 0
    data = json.loads(summary.read_text())
    assert len(data["growth"]) == 3 and all(1 <= e["new_nodes"] <= 5 for e in data["growth"])


def test_evolve_truncation_warning(tmp_path, capsys):
    code, out, err = run(["evolve", "--n", "30", "--seed", "1", "--threshold", "0", "--p", "0.01", "--max-sweeps", "1"], capsys)
    assert code == 0
    assert "warning" in err and "truncated=true" in out


def test_evolve_config_file(tmp_path, capsys):
    out = tmp_path / "final.csv"
    cfg = tmp_path / "run.ini"
    cfg.write_text(
        f"[run]\nseed = 5\n[generator]\nn = 40\nedges = 80\n[evolution]\nmean = harmonic\nthreshold = 5\np = 0.5\npolicy = permanent\n[output]\nout = {out}\n"
    )
    assert run(["evolve", "--config", str(cfg), "--no-metrics"], capsys)[0] == 0
    first = out.read_bytes()
    assert run(["evolve", "--config", str(cfg), "--no-metrics"], capsys)[0] == 0
    assert out.read_bytes() == first


def test_metrics_command(tmp_path, capsys):
    k4 = tmp_path / "k4.csv"
    k4.write_text(export_edge_list(complete_graph(4)))
    code, out, _ = run(["metrics", str(k4), "--json-out", str(tmp_path / "m.json")], capsys)
    assert code == 0 and "density=1.000000" in out and "component_count=1" in out

    tri = tmp_path / "tri.csv"
    tri.write_text(export_edge_list(two_triangles()))
    code, out, _ = run(["metrics", str(tri)], capsys)
    assert "modularity=0.500000" in out and "community_count=2" in out


def test_metrics_errors(tmp_path, capsys):
    empty = tmp_path / "empty.csv"
    empty.write_text("u,v,score,factors\n")
    code, _, err = run(["metrics", str(empty)], capsys)
    assert code == 1 and "fewer than 2 nodes" in err
    bad = tmp_path / "bad.csv"
    bad.write_text("u,v,score,factors\n0,0,5,1\n")
    code, _, err = run(["metrics", str(bad)], capsys)
    assert code == 3 and "line 2" in err
    assert run(["metrics", str(tmp_path / "absent.csv")], capsys)[0] == 2
