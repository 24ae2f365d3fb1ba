import io
import xml.etree.ElementTree as ET

import networkx as nx
import pytest
from hypothesis import given

from evograph.engine import EvolutionParams, evolve
from evograph.generate import GeneratorConfig, generate_initial
from evograph.io import (
    EdgeListParseError,
    export_dot,
    export_edge_list,
    export_gexf,
    import_edge_list,
    trace_summary,
    write_atomic,
)
from evograph.model import EdgeAttr, SocialGraph

from .conftest import complete_graph, path_graph, social_graphs

NS = {"g": "http://www.gexf.net/1.2draft"}


def test_edge_list_single_edge():
    g = SocialGraph.from_edges(2, [(1, 0, EdgeAttr({3, 2}, 9))])
    assert export_edge_list(g) == "u,v,score,factors\n0,1,9,2;3\n"


def test_edge_list_empty():
    assert export_edge_list(SocialGraph()) == "u,v,score,factors\n"
    assert import_edge_list("u,v,score,factors\n") == SocialGraph()


def test_edge_list_isolated_trailing_nodes():
    g = SocialGraph.from_edges(5, [(0, 1, EdgeAttr({1}, 2.5))])
    text = export_edge_list(g)
    assert text.startswith("#nodes=5\n")
    assert import_edge_list(text) == g


def test_fractional_scores_exact():
    attr = EdgeAttr({1, 2, 3}, 3 * 7.5**0.5)
    g = SocialGraph.from_edges(2, [(0, 1, attr)])
    back = import_edge_list(export_edge_list(g))
    assert back.edge_attr(0, 1).score.hex() == attr.score.hex()


@given(social_graphs(max_nodes=12))
def test_round_trip(g):
    assert import_edge_list(export_edge_list(g)) == g


@pytest.mark.parametrize(
    "row, fragment",
    [
        ("0,0,5,1", "self-loop"),
        ("0,1,5,", "empty factor"),
        ("0,1,x,1", "bad score"),
        ("0,1,5", "expected 4 fields"),
        ("0,1,-2,1", "nonnegative"),
        ("a,1,5,1", "bad node id"),
    ],
)
def test_import_errors(row, fragment):
    with pytest.raises(EdgeListParseError) as exc:
        import_edge_list(f"u,v,score,factors\n{row}\n")
    assert exc.value.lineno == 2
    assert fragment in str(exc.value)


def test_import_duplicate_pair():
    with pytest.raises(EdgeListParseError, match="duplicate"):
        import_edge_list("u,v,score,factors\n0,1,5,1\n1,0,5,1\n")


def test_import_missing_header():
    with pytest.raises(EdgeListParseError):
        import_edge_list("0,1,5,1\n")
    with pytest.raises(EdgeListParseError):
        import_edge_list("")


def _read_gexf(text):
    return nx.read_gexf(io.BytesIO(text.encode("utf-8")))


def test_gexf_k3():
    text = export_gexf(complete_graph(3))
    h = _read_gexf(text)
    assert h.number_of_nodes() == 3 and h.number_of_edges() == 3
    assert not h.is_directed()
    assert {d["score"] for _, _, d in h.edges(data=True)} == {4.0}
    assert {d["factors"] for _, _, d in h.edges(data=True)} == {"1;2"}


def test_gexf_empty():
    root = ET.fromstring(export_gexf(SocialGraph()))
    assert root.findall(".//g:node", NS) == []
    assert _read_gexf(export_gexf(SocialGraph())).number_of_nodes() == 0


def test_gexf_trace_start_is_sweep_index():
    trace = evolve(path_graph(4), EvolutionParams(threshold=0, accept_prob=1, seed=0))
    h = _read_gexf(export_gexf(trace))
    starts = {tuple(sorted((int(u), int(v)))): d["start"] for u, v, d in h.edges(data=True)}
    assert starts == {(0, 1): 0, (1, 2): 0, (2, 3): 0, (0, 2): 1, (1, 3): 1, (0, 3): 2}
    root = ET.fromstring(export_gexf(trace))
    assert root.find("g:graph", NS).get("mode") == "dynamic"


def test_dot():
    g = SocialGraph.from_edges(2, [(0, 1, EdgeAttr({2, 3}, 9))])
    assert export_dot(g) == 'graph {\n  0;\n  1;\n  0 -- 1 [label="9"];\n}\n'
    assert export_dot(SocialGraph(2)) == "graph {\n  0;\n  1;\n}\n"
    assert export_dot(SocialGraph()) == "graph {\n}\n"


def test_exports_deterministic():
    g = generate_initial(GeneratorConfig(n=40, seed=8))
    for fn in (export_edge_list, export_gexf, export_dot):
        assert fn(g) == fn(g.copy())


def test_trace_summary_counts():
    trace = evolve(path_graph(4), EvolutionParams(threshold=0, accept_prob=1, seed=0))
    summary = trace_summary(trace)
    assert summary["edge_counts"] == [3, 5, 6, 6]
    assert [r["added"] for r in summary["reports"]] == [2, 1, 0]


def test_write_atomic(tmp_path):
    target = tmp_path / "out.csv"
    write_atomic(target, "a\n")
    write_atomic(target, "b\n")
    assert target.read_text() == "b\n"
    assert [p.name for p in tmp_path.iterdir()] == ["out.csv"]
