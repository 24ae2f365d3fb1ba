from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import strategies as st

from evograph.model import EdgeAttr, SocialGraph

UNIFORM = EdgeAttr({1, 2}, 4)


def path_graph(n: int, attr: EdgeAttr = UNIFORM) -> SocialGraph:
    return SocialGraph.from_edges(n, [(i, i + 1, attr) for i in range(n - 1)])


def complete_graph(n: int, attr: EdgeAttr = UNIFORM) -> SocialGraph:
    return SocialGraph.from_edges(n, [(u, v, attr) for u, v in itertools.combinations(range(n), 2)])


def two_triangles() -> SocialGraph:
    edges = [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)]
    return SocialGraph.from_edges(6, [(u, v, UNIFORM) for u, v in edges])


def random_uniform_graph(rnd: random.Random, n: int, q: float, attr: EdgeAttr = UNIFORM) -> SocialGraph:
    pairs = [(u, v) for u, v in itertools.combinations(range(n), 2) if rnd.random() < q]
    return SocialGraph.from_edges(n, [(u, v, attr) for u, v in pairs])


def closure_oracle(n: int, pairs) -> set[tuple[int, int]]:
    """Union of cliques over connected components, via union-find."""
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in pairs:
        parent[find(u)] = find(v)
    return {(u, v) for u, v in itertools.combinations(range(n), 2) if find(u) == find(v)}


def set_partitions(items):
    """All set partitions of ``items`` (Bell-number many)."""
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1 :]
        yield [[first]] + part


def check_trace_invariants(trace) -> None:
    """Nested edge sets, unchanged attrs, and witness justification."""
    snaps = trace.snapshots
    for before, after in zip(snaps, snaps[1:]):
        assert before.node_count <= after.node_count
        before_map = before.edge_map()
        after_map = after.edge_map()
        assert before_map.keys() <= after_map.keys()
        for key, attr in before_map.items():
            got = after_map[key]
            assert got.factors == attr.factors
            assert got.score.hex() == attr.score.hex()
    phases = trace.phases or [trace]
    for phase in phases:
        for i, report in enumerate(phase.reports):
            start = phase.snapshots[i]
            added_pairs = {(u, v) for u, v, _, _ in report.added}
            assert not added_pairs & set(report.rejected_by_coin)
            for u, v, attr, w in report.added:
                assert not start.has_edge(u, v)
                assert start.has_edge(u, w) and start.has_edge(w, v)
                assert attr.score > phase.params.threshold


@st.composite
def edge_attrs(draw, max_factor: int = 6, max_score: int = 16):
    factors = draw(st.frozensets(st.integers(1, max_factor), min_size=1))
    score = draw(st.integers(0, max_score))
    return EdgeAttr(factors, score)


@st.composite
def social_graphs(draw, max_nodes: int = 9, max_factor: int = 5, max_score: int = 12):
    n = draw(st.integers(0, max_nodes))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    edges = [(u, v, draw(edge_attrs(max_factor, max_score))) for u, v in chosen]
    return SocialGraph.from_edges(n, edges)


@pytest.fixture
def rnd() -> random.Random:
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("tests.test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for line in sorted(results, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
